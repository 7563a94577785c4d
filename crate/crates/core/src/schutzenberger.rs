//! Berenstein–Kirillov reflections and the Schützenberger involution on
//! Gelfand–Tsetlin triangles.
//!
//! `s_k` reflects every entry of row `k` inside the interval cut out by its
//! (up to four) neighbours in rows `k + 1` and `k - 1`. `omega_j` applies
//! `s_1` first and `s_j` last. The involution is the product of
//! `omega_1 .. omega_{n-1}`; see [`CompositionOrder`] for which end of that
//! product acts first.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::triangle::GtTriangle;

/// Which end of the product `omega_1 omega_2 ... omega_{n-1}` acts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionOrder {
    /// Ordinary composition: `omega_{n-1}` acts first, `omega_1` last.
    RightmostFirst,
    /// `omega_1` acts first, `omega_{n-1}` last.
    LeftmostFirst,
}

/// The order used by [`schutzenberger`]. It is the only one of the two under
/// which the result agrees with the RSK route and with the closed form of the
/// rightmost diagonal; [`check_composition_order`] re-establishes this.
pub const COMPOSITION_ORDER: CompositionOrder = CompositionOrder::RightmostFirst;

/// Applies `s_k` in place.
fn reflect_row(t: &mut GtTriangle, k: usize) {
    let n = t.n();
    for j in 1..=k {
        let x = t.get(k, j);
        let above_left = t.get(k + 1, j);
        let above_right = t.get(k + 1, j + 1);
        let below_left = t.try_get(k - 1, j - 1);
        let below_right = t.try_get(k - 1, j);
        let lo = below_left.map_or(above_left, |b| above_left.max(b));
        let hi = below_right.map_or(above_right, |b| above_right.min(b));
        t.set(k, j, lo + hi - x);
    }
    debug_assert!(k < n);
}

/// The Berenstein–Kirillov operator `s_k`, `1 <= k <= n - 1`.
pub fn bk_s(k: usize, t: &GtTriangle) -> Result<GtTriangle> {
    if k < 1 || k >= t.n() {
        return Err(Error::OutOfRange(format!("s_{k} undefined for size {}", t.n())));
    }
    let mut out = t.clone();
    reflect_row(&mut out, k);
    Ok(out)
}

/// `omega_j = s_j s_{j-1} ... s_1`, with `s_1` applied first.
pub fn omega(j: usize, t: &GtTriangle) -> Result<GtTriangle> {
    if j < 1 || j >= t.n() {
        return Err(Error::OutOfRange(format!("omega_{j} undefined for size {}", t.n())));
    }
    let mut out = t.clone();
    apply_omega(&mut out, j);
    Ok(out)
}

fn apply_omega(t: &mut GtTriangle, j: usize) {
    for k in 1..=j {
        reflect_row(t, k);
    }
}

pub fn schutzenberger_with_order(t: &GtTriangle, order: CompositionOrder) -> GtTriangle {
    let n = t.n();
    let mut out = t.clone();
    match order {
        CompositionOrder::RightmostFirst => (1..n).rev().for_each(|j| apply_omega(&mut out, j)),
        CompositionOrder::LeftmostFirst => (1..n).for_each(|j| apply_omega(&mut out, j)),
    }
    out
}

/// The Schützenberger involution.
pub fn schutzenberger(t: &GtTriangle) -> GtTriangle {
    schutzenberger_with_order(t, COMPOSITION_ORDER)
}

/// Checks [`COMPOSITION_ORDER`] against the RSK route on every triangle of
/// size `n <= 3` with entries `<= 4`, and against the diagonal closed form.
/// Returns the first disagreement.
pub fn check_composition_order() -> std::result::Result<(), String> {
    use crate::enumerate::{generate, FamilySpec};
    use crate::triangle::FamilyKind;
    for n in 1..=3 {
        let spec = FamilySpec { kind: FamilyKind::Gt, n, k: None, bound: Some(4) };
        for t in generate(&spec).map_err(|e| e.to_string())? {
            let s = schutzenberger(&t);
            if s != crate::tableau::schutzenberger_word_oracle(&t) {
                return Err(format!("word oracle disagrees on {}", t.compact()));
            }
            let diag = rightmost_diagonal_of_s(&t);
            if (1..=n).any(|k| diag.value(k) != s.get(k, k)) {
                return Err(format!("diagonal formula disagrees on {}", t.compact()));
            }
        }
    }
    Ok(())
}

/// Whether `s_k s_{k+1} s_k = s_{k+1} s_k s_{k+1}` holds at `t`.
pub fn braid_relation_holds(k: usize, t: &GtTriangle) -> Result<bool> {
    let lhs = bk_s(k, &bk_s(k + 1, &bk_s(k, t)?)?)?;
    let rhs = bk_s(k + 1, &bk_s(k, &bk_s(k + 1, t)?)?)?;
    Ok(lhs == rhs)
}

/// First triangle of size `n` with entries `<= bound` (in generation order)
/// at which the braid relation fails, with the `k` that fails.
pub fn find_braid_witness(n: usize, bound: i32) -> Option<(GtTriangle, usize)> {
    use crate::enumerate::{generate, FamilySpec};
    use crate::triangle::FamilyKind;
    if n < 3 {
        return None;
    }
    let spec = FamilySpec { kind: FamilyKind::Gt, n, k: None, bound: Some(bound) };
    generate(&spec).ok()?.find_map(|t| {
        (1..n - 1).find(|&k| !braid_relation_holds(k, &t).unwrap()).map(|k| (t, k))
    })
}

/// Closed-form values `Y(k,k)` of the rightmost diagonal of `S X`, together
/// with a maximising chain `n = j_0 > j_1 > ... > j_{n-k}` for each `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalFormulaTable {
    pub n: usize,
    /// `values[k - 1] = Y(k,k)`
    pub values: Vec<i32>,
    /// `chains[k - 1] = [j_0, j_1, ..., j_{n-k}]`
    pub chains: Vec<Vec<usize>>,
}

impl DiagonalFormulaTable {
    pub fn value(&self, k: usize) -> i32 {
        self.values[k - 1]
    }
}

/// Evaluates
///
/// ```text
/// Y(k,k) = max over n = j_0 > j_1 > ... > j_m >= 1, m = n - k, of
///          sum_{i<m} (X(j_i + i, j_i) - X(j_{i+1} + i, j_{i+1})) + X(j_m + m, j_m)
/// ```
///
/// in its telescoped form `X(n,n) + sum_{t=1..m} w(t, j_t)` with
/// `w(t, j) = X(j + t, j) - X(j + t - 1, j)`, by dynamic programming over
/// `(t, j_t)`. One pass over `t = 1..n-1` yields every `k`.
pub fn rightmost_diagonal_of_s(t: &GtTriangle) -> DiagonalFormulaTable {
    let n = t.n();
    let top = t.get(n, n);
    let weight = |step: usize, j: usize| t.get(j + step, j) - t.get(j + step - 1, j);

    let mut values = vec![0; n];
    let mut chains = vec![Vec::new(); n];
    values[n - 1] = top;
    chains[n - 1] = vec![n];

    // best[j] = best partial sum of a chain of the current length ending at j
    // parent[step][j] = j_{step-1} on that chain
    let mut best: Vec<Option<i32>> = vec![None; n + 1];
    best[n] = Some(0);
    let mut parent: Vec<Vec<usize>> = vec![vec![0; n + 1]];
    for step in 1..n {
        let mut next = vec![None; n + 1];
        let mut par = vec![0; n + 1];
        // running maximum of best[j'] over j' > j, scanned from the right
        let mut run: Option<(i32, usize)> = None;
        for j in (1..=n - step).rev() {
            if let Some(b) = best[j + 1] {
                if run.map_or(true, |(r, _)| b > r) {
                    run = Some((b, j + 1));
                }
            }
            if let Some((r, from)) = run {
                next[j] = Some(r + weight(step, j));
                par[j] = from;
            }
        }
        best = next;
        parent.push(par);

        let k = n - step;
        let (arg, val) = (1..=n)
            .filter_map(|j| best[j].map(|b| (j, b)))
            .fold(None::<(usize, i32)>, |acc, (j, b)| match acc {
                Some((_, v)) if v >= b => acc,
                _ => Some((j, b)),
            })
            .expect("a chain of every length exists");
        values[k - 1] = top + val;
        let mut chain = vec![arg];
        let mut cur = arg;
        for s in (1..=step).rev() {
            cur = parent[s][cur];
            chain.push(cur);
        }
        chain.reverse();
        chains[k - 1] = chain;
    }
    DiagonalFormulaTable { n, values, chains }
}

/// GOGAm: the Schützenberger image is Magog, i.e. `Y(k,k) <= k` for all `k`.
/// Decided through the diagonal closed form, without computing the image.
pub fn is_gogam(t: &GtTriangle) -> bool {
    let table = rightmost_diagonal_of_s(t);
    (1..=t.n()).all(|k| table.value(k) <= k as i32)
}
