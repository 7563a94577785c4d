//! The bijection between `(n, 2)` Gog trapezoids and `(n, 2)` GOGAm
//! trapezoids.
//!
//! An `(n, 2)` trapezoid is determined by its two rightmost NW–SE diagonals.
//! For a Gog trapezoid these are
//!
//! ```text
//! a_j = x(n-j, n-j)      j = 1..n-1   (right edge)
//! b_j = x(n-j+1, n-j)    j = 1..n-1   (b_1 = n - 1 always)
//! ```
//!
//! The forward map grows a triangle one diagonal at a time. After `k`
//! diagonals the partial triangle has size `k` and is stored as
//! [`BijectionState`]: its right edge `u_0..u_{k-1}`, its second diagonal
//! `v_1..v_{k-1}`, and the constant `n - k + 1` in every other cell. Adding
//! the diagonal `(n - k, .., n - k, b_k, a_k)` and applying exactly one of the
//! rules I, II, IIIa, IIIb, IVa, IVb yields the next state. Every state
//! satisfies
//!
//! ```text
//! u_0 <= n
//! u_0 - u_i + v_i <= n - 1                 1 <= i <= k-1
//! u_0 - u_i + v_i - v_j + 1 <= j - 1       1 <= i < j <= k-1
//! ```
//!
//! which for `k = n` says the final triangle is GOGAm. The inverse map peels
//! the diagonals off again; the rule applied at each step can be read back
//! from the state.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::schutzenberger::is_gogam;
use crate::triangle::{FamilyKind, GtTriangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleTag {
    I,
    II,
    IIIa,
    /// `l = 1 + max{ j | v'_{k-j} = n-k }` in the resulting state.
    IIIb { l: usize },
    IVa,
    /// `l = max{ i | v_{k-i} <= v_k - i }`.
    IVb { l: usize },
}

impl RuleTag {
    pub fn name(self) -> &'static str {
        match self {
            RuleTag::I => "I",
            RuleTag::II => "II",
            RuleTag::IIIa => "IIIa",
            RuleTag::IIIb { .. } => "IIIb",
            RuleTag::IVa => "IVa",
            RuleTag::IVb { .. } => "IVb",
        }
    }

    pub const NAMES: [&'static str; 6] = ["I", "II", "IIIa", "IIIb", "IVa", "IVb"];
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RuleTag::IIIb { l } | RuleTag::IVb { l } => write!(f, "{}(l={l})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

pub type Trace = Vec<RuleTag>;

/// Checks the three families of inequalities on a right edge `u_0..u_{k-1}`
/// and second diagonal `v_1..v_{k-1}` (`v[0]` holds `v_1`).
pub fn gogam_inequality_violations(n: usize, u: &[i32], v: &[i32]) -> Vec<String> {
    let n = n as i32;
    let k = u.len();
    let mut out = Vec::new();
    if u[0] > n {
        out.push(format!("u_0 = {} > n = {n}", u[0]));
    }
    for i in 1..k {
        let lhs = u[0] - u[i] + v[i - 1];
        if lhs > n - 1 {
            out.push(format!("u_0 - u_{i} + v_{i} = {lhs} > {}", n - 1));
        }
    }
    for i in 1..k {
        for j in i + 1..k {
            let lhs = u[0] - u[i] + v[i - 1] - v[j - 1] + 1;
            if lhs > j as i32 - 1 {
                out.push(format!("u_0 - u_{i} + v_{i} - v_{j} + 1 = {lhs} > {}", j - 1));
            }
        }
    }
    out
}

/// A partial triangle of the forward and inverse algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BijectionState {
    n: usize,
    /// `u_0 .. u_{k-1}`, top to bottom
    u: Vec<i32>,
    /// `v_1 .. v_{k-1}`, top to bottom
    v: Vec<i32>,
}

impl BijectionState {
    /// The size-1 triangle holding `n`.
    pub fn initial(n: usize) -> Self {
        BijectionState { n, u: vec![n as i32], v: Vec::new() }
    }

    pub fn from_parts(n: usize, u: Vec<i32>, v: Vec<i32>) -> Result<Self> {
        if u.is_empty() || u.len() > n || v.len() + 1 != u.len() {
            return Err(Error::Shape(format!(
                "state with {} u-entries and {} v-entries for n = {n}",
                u.len(),
                v.len()
            )));
        }
        Ok(BijectionState { n, u, v })
    }

    /// Reads the two rightmost diagonals of a size-`n` triangle whose other
    /// entries are all 1.
    pub fn from_gogam_trapezoid(t: &GtTriangle) -> Self {
        let d = GogamDiagonals::of(t);
        BijectionState { n: t.n(), u: d.alpha, v: d.beta }
    }

    /// Current size `k`.
    pub fn size(&self) -> usize {
        self.u.len()
    }

    pub fn total_size(&self) -> usize {
        self.n
    }

    /// Value of every cell off the two rightmost diagonals.
    pub fn constant(&self) -> i32 {
        (self.n - self.size() + 1) as i32
    }

    /// `u_i`, `0 <= i < k`.
    pub fn u(&self, i: usize) -> i32 {
        self.u[i]
    }

    /// `v_i`, `1 <= i < k`.
    pub fn v(&self, i: usize) -> i32 {
        self.v[i - 1]
    }

    pub fn u_slice(&self) -> &[i32] {
        &self.u
    }

    pub fn v_slice(&self) -> &[i32] {
        &self.v
    }

    /// The partial triangle as a size-`k` triangle.
    pub fn materialize(&self) -> GtTriangle {
        let k = self.size();
        let c = self.constant();
        GtTriangle::from_fn(k, |r, j| {
            if r == j {
                self.u[k - r]
            } else if r == j + 1 {
                self.v[k - j - 1]
            } else {
                c
            }
        })
    }

    /// Gelfand–Tsetlin violations of the materialized triangle followed by
    /// violations of the three inequality families.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self.materialize().validate_gt().iter().map(|v| format!("not GT: {v}")).collect();
        out.extend(gogam_inequality_violations(self.n, &self.u, &self.v));
        out
    }

    fn ensure_invariants(&self, context: impl FnOnce() -> String) -> Result<()> {
        let bad = self.invariant_violations();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!("{}: {}", context(), bad.join("; "))))
        }
    }
}

impl fmt::Display for BijectionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} c={} u={:?} v={:?}", self.size(), self.constant(), self.u, self.v)
    }
}

/// The two rightmost NW–SE diagonals of an `(n, 2)` Gog trapezoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrapezoidDiagonals {
    pub n: usize,
    /// `a_1 .. a_{n-1}`
    pub a: Vec<i32>,
    /// `b_2 .. b_{n-1}`
    pub b: Vec<i32>,
}

impl TrapezoidDiagonals {
    /// `a_j = x(n-j, n-j)`, `1 <= j <= n-1`.
    pub fn a(&self, j: usize) -> i32 {
        self.a[j - 1]
    }

    /// `b_j = x(n-j+1, n-j)`, `1 <= j <= n-1`; `b_1 = n - 1`.
    pub fn b(&self, j: usize) -> i32 {
        if j == 1 {
            self.n as i32 - 1
        } else {
            self.b[j - 2]
        }
    }

    /// The inequalities forced by the Gog conditions.
    pub fn violations(&self) -> Vec<String> {
        let n = self.n;
        let mut out = Vec::new();
        let a = |j: usize| if j == 0 { n as i32 } else { self.a(j) };
        for j in 1..n {
            if a(j) > a(j - 1) {
                out.push(format!("a_{j} = {} > a_{} = {}", a(j), j - 1, a(j - 1)));
            }
            let b = self.b(j);
            if b < (n - j) as i32 {
                out.push(format!("b_{j} = {b} < {}", n - j));
            }
            if j >= 2 {
                if b >= a(j - 1) {
                    out.push(format!("b_{j} = {b} >= a_{} = {}", j - 1, a(j - 1)));
                }
                if b > self.b(j - 1) {
                    out.push(format!("b_{j} = {b} > b_{} = {}", j - 1, self.b(j - 1)));
                }
            }
        }
        out
    }

    /// The Gog trapezoid with these diagonals.
    pub fn to_triangle(&self) -> GtTriangle {
        let n = self.n;
        GtTriangle::from_fn(n, |i, j| {
            if i == n && j == n {
                n as i32
            } else if i == j {
                self.a(n - i)
            } else if i == j + 1 {
                self.b(n - j)
            } else {
                j as i32
            }
        })
    }
}

fn require_gog_trapezoid(t: &GtTriangle, k: usize) -> Result<()> {
    if !t.is_gt() || !t.is_gog() || !t.is_trapezoid(FamilyKind::Gog, k) {
        return Err(Error::InvalidInput(format!("not an ({},{k}) Gog trapezoid: {}", t.n(), t.compact())));
    }
    Ok(())
}

pub fn extract_diagonals(t: &GtTriangle) -> Result<TrapezoidDiagonals> {
    require_gog_trapezoid(t, 2)?;
    let n = t.n();
    let a = (1..n).map(|j| t.get(n - j, n - j)).collect();
    let b = (2..n).map(|j| t.get(n - j + 1, n - j)).collect();
    Ok(TrapezoidDiagonals { n, a, b })
}

/// Right edge `alpha_0..alpha_{n-1}` and second diagonal `beta_1..beta_{n-1}`
/// of a triangle, top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GogamDiagonals {
    pub n: usize,
    pub alpha: Vec<i32>,
    pub beta: Vec<i32>,
}

impl GogamDiagonals {
    pub fn of(t: &GtTriangle) -> Self {
        let n = t.n();
        GogamDiagonals {
            n,
            alpha: (0..n).map(|i| t.get(n - i, n - i)).collect(),
            beta: (1..n).map(|i| t.get(n - i + 1, n - i)).collect(),
        }
    }

    /// For a triangle that is 1 off its two rightmost diagonals these
    /// inequalities are equivalent to the GOGAm property.
    pub fn satisfies_inequalities(&self) -> bool {
        gogam_inequality_violations(self.n, &self.alpha, &self.beta).is_empty()
    }
}

/// One step of the forward algorithm: adds the diagonal ending in
/// `(b_k, a_k)` to a state of size `k` and returns the state of size `k + 1`.
pub fn forward_step(state: &BijectionState, b: i32, a: i32) -> Result<(BijectionState, RuleTag)> {
    let n = state.n;
    let k = state.size();
    if k >= n {
        return Err(Error::OutOfRange(format!("state already has size n = {n}")));
    }
    let c = (n - k) as i32;
    if b < c || b > a || b >= state.u[k - 1] {
        return Err(Error::InvalidInput(format!(
            "diagonal (b_{k}, a_{k}) = ({b}, {a}) cannot extend {state}"
        )));
    }

    let mut u = state.u.clone();
    let mut v = state.v.clone();
    let dec = |xs: &mut [i32]| xs.iter_mut().for_each(|x| *x -= 1);

    let tag = if b == c && a == c {
        dec(&mut u);
        dec(&mut v);
        v.push(b);
        RuleTag::I
    } else if b == c {
        dec(&mut v);
        v.push(b);
        RuleTag::II
    } else if b == a {
        dec(&mut u);
        let candidate = BijectionState {
            n,
            u: [u.as_slice(), &[a]].concat(),
            v: [v.as_slice(), &[b]].concat(),
        };
        if candidate.materialize().is_gt() {
            v.push(b);
            RuleTag::IIIa
        } else {
            dec(&mut v);
            v.push(c);
            let l = run_length_at_constant(&v, c);
            RuleTag::IIIb { l }
        }
    } else if k >= 2 && b > v[k - 2] {
        // v_{k-i} for i = 1..k-1 is v[k-1-i]
        let l = (1..k)
            .filter(|&i| v[k - 1 - i] <= b - i as i32)
            .max()
            .expect("v_{k-1} < v_k gives i = 1");
        v.push(b);
        // v_k ..= v_{k-l+1} := n - k, v_{k-l} := v_k - l
        for idx in k - l..k {
            v[idx] = c;
        }
        v[k - l - 1] = b - l as i32;
        RuleTag::IVb { l }
    } else {
        v.push(b);
        RuleTag::IVa
    };
    u.push(a);

    let next = BijectionState { n, u, v };
    next.ensure_invariants(|| format!("rule {tag} on {state} with (b,a)=({b},{a})"))?;
    Ok((next, tag))
}

/// `1 + max{ j | v_{k-j} = c }` for `v = v_1..v_k` (with `v_k = c`).
fn run_length_at_constant(v: &[i32], c: i32) -> usize {
    v.iter().rev().take_while(|&&x| x == c).count()
}

/// A full forward run: the state after each diagonal and the rule applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardRun {
    pub input: GtTriangle,
    pub output: GtTriangle,
    /// `states[k - 1]` has size `k`, for `k = 1..=n`.
    pub states: Vec<BijectionState>,
    /// `trace[k - 1]` is the rule applied when the state grows from `k` to `k + 1`.
    pub trace: Trace,
}

pub fn forward_run(t: &GtTriangle) -> Result<ForwardRun> {
    let d = extract_diagonals(t)?;
    let n = t.n();
    let mut states = vec![BijectionState::initial(n)];
    let mut trace = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let (next, tag) = forward_step(states.last().unwrap(), d.b(k), d.a(k))?;
        if next.u[k] != d.a(k) {
            return Err(Error::Inconsistent(format!("u_{k} = {} differs from a_{k} = {}", next.u[k], d.a(k))));
        }
        states.push(next);
        trace.push(tag);
    }
    let output = states.last().unwrap().materialize();
    Ok(ForwardRun { input: t.clone(), output, states, trace })
}

/// Maps an `(n, 2)` Gog trapezoid to an `(n, 2)` GOGAm trapezoid.
pub fn gog_to_gogam_n2(t: &GtTriangle) -> Result<(GtTriangle, Trace)> {
    let run = forward_run(t)?;
    Ok((run.output, run.trace))
}

/// One step of the inverse algorithm: strips the leftmost diagonal of a state
/// of size `k + 1`, returning the state of size `k`, the recovered
/// `(b_k, a_k)` and the rule that the forward step must have used.
pub fn inverse_step(state: &BijectionState) -> Result<(BijectionState, (i32, i32), RuleTag)> {
    let n = state.n;
    let size = state.size();
    if size < 2 {
        return Err(Error::OutOfRange("nothing left to strip".into()));
    }
    let k = size - 1;
    let c = (n - k) as i32;
    let (vk, uk) = (state.v(k), state.u(k));
    let invalid = |why: &str| Error::InvalidInput(format!("{why} at {state}"));

    // u_0..u_{k-1} and v_1..v_{k-1}
    let mut u = state.u[..k].to_vec();
    let mut v = state.v[..k - 1].to_vec();
    let inc = |xs: &mut [i32]| xs.iter_mut().for_each(|x| *x += 1);

    let (emitted, tag) = if vk == c && uk == c {
        inc(&mut u);
        inc(&mut v);
        ((vk, uk), RuleTag::I)
    } else if vk == c && uk > c {
        let has_pair = (1..k).any(|i| state.u(i) == state.v(i));
        if !has_pair {
            inc(&mut v);
            ((vk, uk), RuleTag::II)
        } else {
            let l = run_length_at_constant(&state.v, c);
            if l >= k {
                return Err(invalid("second diagonal is constant"));
            }
            let pivot = state.v(k - l) + l as i32;
            if pivot >= uk {
                inc(&mut u);
                inc(&mut v);
                ((uk, uk), RuleTag::IIIb { l })
            } else {
                // v_i := n-k+1 for k-l <= i <= k-1
                for i in k - l..k {
                    v[i - 1] = c + 1;
                }
                ((pivot, uk), RuleTag::IVb { l })
            }
        }
    } else if vk > c && vk == uk {
        inc(&mut u);
        ((vk, uk), RuleTag::IIIa)
    } else if vk > c && vk < uk {
        ((vk, uk), RuleTag::IVa)
    } else {
        return Err(invalid("no rule matches"));
    };

    let prev = BijectionState { n, u, v };
    if !prev.invariant_violations().is_empty() {
        return Err(Error::InvalidInput(format!(
            "rule {tag} on {state} gives {prev}: {}",
            prev.invariant_violations().join("; ")
        )));
    }
    Ok((prev, emitted, tag))
}

/// Maps an `(n, 2)` GOGAm trapezoid back to its `(n, 2)` Gog trapezoid. The
/// trace lists rules in the order they are undone (`k = n-1` down to 1).
pub fn gogam_to_gog_n2(t: &GtTriangle) -> Result<(GtTriangle, Trace)> {
    let n = t.n();
    if !t.is_gt() || !t.is_trapezoid(FamilyKind::Gogam, 2) || !is_gogam(t) {
        return Err(Error::InvalidInput(format!("not an ({n},2) GOGAm trapezoid: {}", t.compact())));
    }
    let mut state = BijectionState::from_gogam_trapezoid(t);
    let mut a = vec![0; n.saturating_sub(1)];
    let mut b = vec![0; n.saturating_sub(1)];
    let mut trace = Vec::with_capacity(n.saturating_sub(1));
    for k in (1..n).rev() {
        let (prev, (bk, ak), tag) = inverse_step(&state)?;
        a[k - 1] = ak;
        b[k - 1] = bk;
        trace.push(tag);
        state = prev;
    }
    if state.u[0] != n as i32 {
        return Err(Error::InvalidInput(format!("inverse ends with u_0 = {} instead of {n}", state.u[0])));
    }
    if n >= 2 && b[0] != n as i32 - 1 {
        return Err(Error::InvalidInput(format!("inverse gives b_1 = {} instead of {}", b[0], n - 1)));
    }
    let diagonals = TrapezoidDiagonals { n, a, b: b.into_iter().skip(1).collect() };
    let gog = diagonals.to_triangle();
    require_gog_trapezoid(&gog, 2).map_err(|e| Error::InvalidInput(format!("inverse image invalid: {e}")))?;
    Ok((gog, trace))
}

/// On `(n, 1)` Gog trapezoids the bijection subtracts from each entry the
/// number of inversions covering it.
pub fn n1_subtraction_map(t: &GtTriangle) -> Result<GtTriangle> {
    require_gog_trapezoid(t, 1)?;
    Ok(GtTriangle::from_fn(t.n(), |i, j| t.get(i, j) - t.covering_count(i, j) as i32))
}

/// `x(1,1)`; for a Gog triangle, the column of the +1 in the bottom row of
/// its ASM. Preserved by the `(n, 2)` bijection.
pub fn statistic_x11(t: &GtTriangle) -> i32 {
    t.get(1, 1)
}

/// Magog-side counterpart of [`statistic_x11`]: sum of the top row minus
/// sum of the row below it. Equals `x(1,1)` of the Gog triangle for the Magog
/// triangle `S(gog_to_gogam_n2(gog))`.
pub fn magog_statistic_rows(t: &GtTriangle) -> i32 {
    let n = t.n();
    let top: i32 = t.row(n).iter().sum();
    let below: i32 = if n >= 2 { t.row(n - 1).iter().sum() } else { 0 };
    top - below
}

/// Alternative reading: rightmost NW–SE diagonal sum minus the sum of the one
/// next to it. Does not match `x(1,1)` in general; kept for comparison.
pub fn magog_statistic_diagonals(t: &GtTriangle) -> i32 {
    let n = t.n();
    (1..=n).map(|i| t.get(i, i)).sum::<i32>() - (1..n).map(|i| t.get(i + 1, i)).sum::<i32>()
}

/// Checks the structural facts about traces established alongside the
/// forward algorithm. Returns one message per violation.
pub fn trace_lemma_violations(run: &ForwardRun) -> Vec<String> {
    let n = run.input.n();
    let mut out = Vec::new();
    let is_b = |t: &RuleTag| matches!(t, RuleTag::IIIb { .. } | RuleTag::IVb { .. });
    for (idx, &tag) in run.trace.iter().enumerate() {
        let k = idx + 1;
        let prev = idx.checked_sub(1).map(|p| run.trace[p]);
        let before = &run.states[idx];
        let after = &run.states[idx + 1];

        if matches!(tag, RuleTag::IIIb { .. }) && matches!(prev, Some(RuleTag::I) | Some(RuleTag::II)) {
            out.push(format!("step {k}: IIIb right after {}", prev.unwrap()));
        }
        if let RuleTag::IVb { l } = tag {
            if !prev.as_ref().is_some_and(is_b) {
                out.push(format!("step {k}: IVb after {:?}", prev.map(RuleTag::name)));
            }
            // steps k-l .. k-1 were all IIIb or IVb
            if l > k - 1 || !run.trace[k - 1 - l..k - 1].iter().all(is_b) {
                out.push(format!("step {k}: IVb(l={l}) not preceded by {l} IIIb/IVb steps"));
            }
            let target = (n - k + 1) as i32;
            if (k - l..k).any(|i| before.v(i) != target) {
                out.push(format!("step {k}: IVb(l={l}) with v_{}..v_{} of {before} not all {target}", k - l, k - 1));
            }
        }
        if let RuleTag::IIIb { l } | RuleTag::IVb { l } = tag {
            // after IVb the pair lies strictly left of the reset block; after
            // IIIb it may sit at i = k - l itself
            let bound = if matches!(tag, RuleTag::IVb { .. }) { k - l } else { k };
            if !(1..bound).any(|i| after.u(i) == after.v(i)) {
                out.push(format!("step {k}: {tag} leaves no u_i = v_i with i < {bound} in {after}"));
            }
            let discriminant = after.v(k - l) + l as i32;
            let ok = match tag {
                RuleTag::IVb { .. } => discriminant < after.u(k),
                _ => discriminant >= after.u(k),
            };
            if !ok {
                out.push(format!("step {k}: {tag} not recoverable from {after}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{generate, FamilySpec};
    use crate::schutzenberger::schutzenberger;

    fn tri(rows: &[&[i32]]) -> GtTriangle {
        GtTriangle::from_rows_top_down(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn worked_gog() -> GtTriangle {
        tri(&[&[1, 2, 3, 4, 5], &[1, 2, 4, 5], &[1, 3, 4], &[1, 3], &[2]])
    }

    fn worked_gogam() -> GtTriangle {
        tri(&[&[1, 1, 1, 2, 3], &[1, 1, 2, 3], &[1, 1, 3], &[1, 3], &[2]])
    }

    fn state(n: usize, u: &[i32], v: &[i32]) -> BijectionState {
        BijectionState::from_parts(n, u.to_vec(), v.to_vec()).unwrap()
    }

    #[test]
    fn diagonals_of_worked_trapezoid() {
        let d = extract_diagonals(&worked_gog()).unwrap();
        assert_eq!(d.a, vec![5, 4, 3, 2]);
        assert_eq!(d.b, vec![4, 3, 1]);
        assert_eq!(d.b(1), 4);
        assert!(d.violations().is_empty());
        assert_eq!(d.to_triangle(), worked_gog());

        let staircase = extract_diagonals(&GtTriangle::staircase_gog(5)).unwrap();
        assert_eq!(staircase.a, vec![4, 3, 2, 1]);
        assert_eq!(staircase.b, vec![3, 2, 1]);

        let small = extract_diagonals(&tri(&[&[1, 2], &[2]])).unwrap();
        assert_eq!((small.a, small.b), (vec![2], vec![]));

        let not_trapezoid = tri(&[&[1, 2, 3, 4, 5], &[1, 3, 4, 5], &[1, 4, 5], &[2, 4], &[3]]);
        assert!(matches!(extract_diagonals(&not_trapezoid), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn worked_forward_steps() {
        let (s, tag) = forward_step(&state(5, &[5, 5], &[4]), 4, 4).unwrap();
        assert_eq!(tag, RuleTag::IIIa);
        assert_eq!(s, state(5, &[4, 4, 4], &[4, 4]));

        let (s, tag) = forward_step(&s, 3, 3).unwrap();
        assert_eq!(tag, RuleTag::IIIb { l: 1 });
        assert_eq!(s, state(5, &[3, 3, 3, 3], &[3, 3, 2]));

        let (prev, emitted, back) = inverse_step(&s).unwrap();
        assert_eq!((prev, emitted, back), (state(5, &[4, 4, 4], &[4, 4]), (3, 3), RuleTag::IIIb { l: 1 }));
    }

    #[test]
    fn second_step_branches() {
        for n in 2..6 {
            let (s, tag) = forward_step(&BijectionState::initial(n), n as i32 - 1, n as i32).unwrap();
            assert_eq!((s.u_slice(), s.v_slice(), tag), (&[n as i32, n as i32][..], &[n as i32 - 1][..], RuleTag::II));
            let (s, tag) = forward_step(&BijectionState::initial(n), n as i32 - 1, n as i32 - 1).unwrap();
            assert_eq!(s.materialize(), GtTriangle::constant(2, n as i32 - 1));
            assert_eq!(tag, RuleTag::I);
        }
    }

    #[test]
    fn forward_rejects_impossible_diagonals() {
        // b below the new constant
        assert!(forward_step(&state(5, &[5, 5], &[4]), 2, 4).is_err());
        // b above a
        assert!(forward_step(&state(5, &[5, 5], &[4]), 4, 3).is_err());
        // b not below u_{k-1}
        assert!(forward_step(&state(5, &[5, 4], &[4]), 4, 4).is_err());
    }

    #[test]
    fn worked_example_both_directions() {
        let (out, trace) = gog_to_gogam_n2(&worked_gog()).unwrap();
        assert_eq!(out, worked_gogam());
        let names: Vec<&str> = trace.iter().map(|t| t.name()).collect();
        assert_eq!(names, vec!["II", "IIIa", "IIIb", "II"]);
        assert!(is_gogam(&out) && schutzenberger(&out).is_magog());
        assert_eq!(statistic_x11(&out), 2);
        assert_eq!(magog_statistic_rows(&schutzenberger(&out)), 2);

        let (back, inverse_trace) = gogam_to_gog_n2(&out).unwrap();
        assert_eq!(back, worked_gog());
        assert_eq!(inverse_trace.iter().rev().copied().collect::<Vec<_>>(), trace);
    }

    #[test]
    fn size_two() {
        let (out, trace) = gog_to_gogam_n2(&tri(&[&[1, 2], &[2]])).unwrap();
        assert_eq!((out.compact(), trace), ("1 2 / 2".to_string(), vec![RuleTag::II]));
        let (out, trace) = gog_to_gogam_n2(&tri(&[&[1, 2], &[1]])).unwrap();
        assert_eq!((out.compact(), trace), ("1 1 / 1".to_string(), vec![RuleTag::I]));

        let (gog, trace) = gogam_to_gog_n2(&GtTriangle::constant(2, 1)).unwrap();
        assert_eq!((gog.compact(), trace), ("1 2 / 1".to_string(), vec![RuleTag::I]));
        assert_eq!(gogam_to_gog_n2(&tri(&[&[1, 2], &[2]])).unwrap().0.compact(), "1 2 / 2");
        assert_eq!(gogam_to_gog_n2(&GtTriangle::constant(1, 1)).unwrap().0, GtTriangle::constant(1, 1));
    }

    #[test]
    fn inverse_rule_one_increments_everything() {
        // n = 4, k = 2: v'_2 = u'_2 = 2
        let s = state(4, &[3, 3, 2], &[2, 2]);
        let (prev, emitted, tag) = inverse_step(&s).unwrap();
        assert_eq!(tag, RuleTag::I);
        assert_eq!(emitted, (2, 2));
        assert_eq!(prev, state(4, &[4, 4], &[3]));
        assert_eq!(forward_step(&prev, 2, 2).unwrap(), (s, RuleTag::I));
    }

    #[test]
    fn inverse_rejects_non_gogam() {
        assert!(gogam_to_gog_n2(&GtTriangle::constant(3, 2)).is_err());
        assert!(gogam_to_gog_n2(&worked_gog()).is_err());
    }

    #[test]
    fn n1_subtraction_examples() {
        let t = tri(&[&[1, 2, 3], &[1, 2], &[2]]);
        let mapped = n1_subtraction_map(&t).unwrap();
        assert_eq!(mapped, tri(&[&[1, 1, 2], &[1, 2], &[2]]));
        assert!(GogamDiagonals::of(&mapped).satisfies_inequalities());
        assert_eq!(gog_to_gogam_n2(&t).unwrap().0, mapped);

        let free = tri(&[&[1, 2, 3], &[1, 3], &[3]]);
        assert!(free.is_trapezoid(FamilyKind::Gog, 1));
        let inversions = free.inversions();
        assert_eq!(inversions.len(), 1);
        assert!(n1_subtraction_map(&worked_gog()).is_err());
    }

    #[test]
    fn inversion_free_n1_trapezoid_is_fixed() {
        // (n,1) trapezoid with only the forced inversions removed: every entry
        // below the top row differs from its NW neighbour except in column 1
        for n in 1..=5 {
            for t in generate(&FamilySpec::trapezoid(FamilyKind::Gog, n, 1)).unwrap() {
                if t.inversions().is_empty() {
                    assert_eq!(n1_subtraction_map(&t).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn exhaustive_round_trip_small() {
        for n in 2..=5 {
            let gogs: Vec<GtTriangle> = generate(&FamilySpec::trapezoid(FamilyKind::Gog, n, 2)).unwrap().collect();
            let mut images = Vec::new();
            for g in &gogs {
                let run = forward_run(g).unwrap();
                assert!(trace_lemma_violations(&run).is_empty(), "{}", g.compact());
                assert!(run.output.is_trapezoid(FamilyKind::Gogam, 2));
                assert!(is_gogam(&run.output));
                assert_eq!(statistic_x11(&run.output), statistic_x11(g));
                let (back, inverse_trace) = gogam_to_gog_n2(&run.output).unwrap();
                assert_eq!(&back, g);
                assert_eq!(inverse_trace.into_iter().rev().collect::<Vec<_>>(), run.trace);
                images.push(run.output);
            }
            images.sort();
            let mut gogams: Vec<GtTriangle> =
                generate(&FamilySpec::trapezoid(FamilyKind::Gogam, n, 2)).unwrap().collect();
            gogams.sort();
            assert_eq!(images, gogams, "image is not the whole GOGAm family at n = {n}");
        }
    }

    #[test]
    fn state_materialization_layout() {
        let s = state(5, &[3, 3, 3, 3], &[3, 3, 2]);
        assert_eq!(s.constant(), 2);
        assert_eq!(s.materialize().compact(), "2 2 3 3 / 2 3 3 / 2 3 / 3");
        assert!(state(5, &[5], &[]).invariant_violations().is_empty());
        assert!(!state(5, &[6], &[]).invariant_violations().is_empty());
        assert!(BijectionState::from_parts(5, vec![5, 5], vec![]).is_err());
    }
}
