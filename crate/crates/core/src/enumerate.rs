//! Exhaustive generation and counting of triangle families.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::schutzenberger::{is_gogam, schutzenberger};
use crate::triangle::{FamilyKind, GtTriangle};

/// `A_n = prod_{j=0}^{n-1} (3j+1)! / (n+j)!`, exactly.
pub fn a_n(n: usize) -> BigUint {
    assert!(n >= 1, "A_n is defined for n >= 1");
    let factorial = |m: usize| -> BigUint { (1..=m).fold(BigUint::from(1u32), |acc, x| acc * x) };
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for j in 0..n {
        num *= factorial(3 * j + 1);
        den *= factorial(n + j);
    }
    debug_assert_eq!(&num % &den, BigUint::from(0u32));
    num / den
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    /// Trapezoid width.
    pub k: Option<usize>,
    /// Largest allowed entry; required for raw Gelfand–Tsetlin triangles.
    pub bound: Option<i32>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: usize) -> Self {
        FamilySpec { kind, n, k: None, bound: None }
    }

    pub fn trapezoid(kind: FamilyKind, n: usize, k: usize) -> Self {
        FamilySpec { kind, n, k: Some(k), bound: None }
    }

    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::OutOfRange("size must be at least 1".into()));
        }
        if let Some(k) = self.k {
            if k > self.n {
                return Err(Error::OutOfRange(format!("trapezoid width {k} exceeds size {}", self.n)));
            }
        }
        if self.kind == FamilyKind::Gt && self.bound.is_none() {
            return Err(Error::InvalidInput("raw Gelfand-Tsetlin enumeration needs an entry bound".into()));
        }
        if let Some(b) = self.bound {
            if b < 1 {
                return Err(Error::OutOfRange(format!("entry bound {b} must be positive")));
            }
        }
        Ok(())
    }
}

/// Backtracking over the cells of a triangle, top row first and left to right
/// within a row. Each cell ranges over the interval left open by the cells
/// already fixed, so emission order is lexicographic in the top-down rows.
#[derive(Debug, Clone)]
pub struct TriangleIter {
    n: usize,
    kind: FamilyKind,
    k: Option<usize>,
    bound: i32,
    /// (i, j) of each position in visiting order
    cells: Vec<(usize, usize)>,
    values: Vec<i32>,
    highs: Vec<i32>,
    /// number of fixed cells
    depth: usize,
    started: bool,
    done: bool,
}

impl TriangleIter {
    fn new(kind: FamilyKind, n: usize, k: Option<usize>, bound: i32) -> Self {
        let cells: Vec<(usize, usize)> = (1..=n).rev().flat_map(|i| (1..=i).map(move |j| (i, j))).collect();
        let len = cells.len();
        TriangleIter {
            n,
            kind,
            k,
            bound,
            cells,
            values: vec![0; len],
            highs: vec![0; len],
            depth: 0,
            started: false,
            done: false,
        }
    }

    fn position(&self, i: usize, j: usize) -> usize {
        let rows_above = self.n - i;
        // rows n, n-1, ..., i+1 hold n + (n-1) + ... + (i+1) cells
        rows_above * (self.n + i + 1) / 2 + (j - 1)
    }

    fn range(&self, pos: usize) -> (i32, i32) {
        let (i, j) = self.cells[pos];
        let (mut lo, mut hi);
        if i == self.n {
            lo = if j > 1 { self.values[pos - 1] } else { 1 };
            hi = self.bound;
        } else {
            lo = self.values[self.position(i + 1, j)];
            hi = self.values[self.position(i + 1, j + 1)];
        }
        match self.kind {
            FamilyKind::Gog => {
                if i == self.n {
                    lo = j as i32;
                    hi = j as i32;
                } else if j > 1 {
                    lo = lo.max(self.values[pos - 1] + 1);
                }
            }
            FamilyKind::Magog if j == i => hi = hi.min(i as i32),
            _ => {}
        }
        if let Some(k) = self.k {
            if i - j >= k {
                let pin = self.kind.pinned_value(j);
                lo = lo.max(pin);
                hi = hi.min(pin);
            }
        }
        (lo, hi)
    }

    fn emit(&self) -> GtTriangle {
        GtTriangle::from_fn(self.n, |i, j| self.values[self.position(i, j)])
    }

    /// Bump the deepest cell that still has room; false when exhausted.
    fn advance(&mut self) -> bool {
        while self.depth > 0 {
            let pos = self.depth - 1;
            if self.values[pos] < self.highs[pos] {
                self.values[pos] += 1;
                return true;
            }
            self.depth -= 1;
        }
        false
    }
}

impl Iterator for TriangleIter {
    type Item = GtTriangle;

    fn next(&mut self) -> Option<GtTriangle> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        loop {
            while self.depth < self.cells.len() {
                let (lo, hi) = self.range(self.depth);
                if lo > hi {
                    break;
                }
                self.values[self.depth] = lo;
                self.highs[self.depth] = hi;
                self.depth += 1;
            }
            if self.depth == self.cells.len() {
                return Some(self.emit());
            }
            if !self.advance() {
                self.done = true;
                return None;
            }
        }
    }
}

/// Members of a family, each exactly once, in lexicographic order of the
/// top-down rows.
pub enum FamilyIter {
    Direct(TriangleIter),
    Collected(std::vec::IntoIter<GtTriangle>),
}

impl Iterator for FamilyIter {
    type Item = GtTriangle;

    fn next(&mut self) -> Option<GtTriangle> {
        match self {
            FamilyIter::Direct(it) => it.next(),
            FamilyIter::Collected(it) => it.next(),
        }
    }
}

pub fn generate(spec: &FamilySpec) -> Result<FamilyIter> {
    spec.check()?;
    let n = spec.n;
    Ok(match spec.kind {
        FamilyKind::Gt => FamilyIter::Direct(TriangleIter::new(FamilyKind::Gt, n, spec.k, spec.bound.unwrap())),
        FamilyKind::Gog => FamilyIter::Direct(TriangleIter::new(FamilyKind::Gog, n, spec.k, n as i32)),
        FamilyKind::Magog => {
            let bound = spec.bound.map_or(n as i32, |b| b.min(n as i32));
            FamilyIter::Direct(TriangleIter::new(FamilyKind::Magog, n, spec.k, bound))
        }
        FamilyKind::Gogam => {
            let mut all: Vec<GtTriangle> = match spec.bound {
                // images of Magog triangles; a GOGAm triangle shares its top row
                // with its Magog image, so every entry is at most n
                None => TriangleIter::new(FamilyKind::Magog, n, spec.k, n as i32)
                    .map(|m| schutzenberger(&m))
                    .collect(),
                Some(b) => gogam_by_filter(n, spec.k, b).collect(),
            };
            all.sort_unstable_by(|a, b| a.rows_top_down().cmp(&b.rows_top_down()));
            FamilyIter::Collected(all.into_iter())
        }
    })
}

/// GOGAm triangles found by testing every Gelfand–Tsetlin triangle with
/// entries `<= bound` against the diagonal criterion.
pub fn gogam_by_filter(n: usize, k: Option<usize>, bound: i32) -> impl Iterator<Item = GtTriangle> {
    TriangleIter::new(FamilyKind::Gogam, n, k, bound).filter(is_gogam)
}

pub fn count(spec: &FamilySpec) -> Result<BigUint> {
    Ok(BigUint::from(generate(spec)?.count()))
}

/// Number of alternating sign matrices of size `n`, by direct enumeration.
pub fn count_asms(n: usize) -> BigUint {
    BigUint::from(crate::asm::all_asms(n).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn counted(kind: FamilyKind, n: usize, k: Option<usize>) -> usize {
        generate(&FamilySpec { kind, n, k, bound: None }).unwrap().count()
    }

    #[test]
    fn product_formula() {
        let got: Vec<u64> = (1..=7).map(|n| a_n(n).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 2, 7, 42, 429, 7436, 218348]);
    }

    #[test]
    fn small_family_counts() {
        assert_eq!(counted(FamilyKind::Gog, 3, None), 7);
        assert_eq!(counted(FamilyKind::Magog, 4, None), 42);
        assert_eq!(counted(FamilyKind::Gog, 3, Some(2)), 7);
        assert_eq!(counted(FamilyKind::Gogam, 3, None), 7);
        let magog2: Vec<String> = generate(&FamilySpec::new(FamilyKind::Magog, 2)).unwrap().map(|t| t.compact()).collect();
        assert_eq!(magog2, vec!["1 1 / 1", "1 2 / 1"]);
        let gog2: Vec<String> = generate(&FamilySpec::new(FamilyKind::Gog, 2)).unwrap().map(|t| t.compact()).collect();
        assert_eq!(gog2, vec!["1 2 / 1", "1 2 / 2"]);
    }

    #[test]
    fn n1_trapezoid_counts_match_filtering() {
        for n in 1..=5 {
            let direct = counted(FamilyKind::Gog, n, Some(1));
            let filtered = generate(&FamilySpec::new(FamilyKind::Gog, n))
                .unwrap()
                .filter(|t| t.is_trapezoid(FamilyKind::Gog, 1))
                .count();
            assert_eq!(direct, filtered);
        }
        let seq: Vec<usize> = (1..=5).map(|n| counted(FamilyKind::Gog, n, Some(1))).collect();
        assert_eq!(seq, vec![1, 2, 5, 14, 42]);
    }

    #[test]
    fn generation_is_sorted_unique_and_valid() {
        for (kind, n, k) in [
            (FamilyKind::Gog, 4, None),
            (FamilyKind::Magog, 4, Some(2)),
            (FamilyKind::Gogam, 4, None),
            (FamilyKind::Gogam, 4, Some(1)),
        ] {
            let all: Vec<GtTriangle> = generate(&FamilySpec { kind, n, k, bound: None }).unwrap().collect();
            let keys: Vec<Vec<Vec<i32>>> = all.iter().map(GtTriangle::rows_top_down).collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]), "{kind:?} not strictly sorted");
            let unique: HashSet<&GtTriangle> = all.iter().collect();
            assert_eq!(unique.len(), all.len());
            assert!(all.iter().all(|t| t.is_member(kind, k)));
        }
        let gt: Vec<GtTriangle> =
            generate(&FamilySpec { kind: FamilyKind::Gt, n: 3, k: None, bound: Some(3) }).unwrap().collect();
        assert!(gt.iter().all(|t| t.is_gt() && t.get(3, 3) <= 3));
    }

    #[test]
    fn raw_gt_count_matches_brute_force() {
        // all arrays with entries in 1..=3, filtered by the GT condition
        let mut brute = 0;
        for code in 0..3usize.pow(6) {
            let mut c = code;
            let t = GtTriangle::from_fn(3, |_, _| {
                let v = (c % 3) as i32 + 1;
                c /= 3;
                v
            });
            if t.is_gt() {
                brute += 1;
            }
        }
        let spec = FamilySpec { kind: FamilyKind::Gt, n: 3, k: None, bound: Some(3) };
        assert_eq!(count(&spec).unwrap(), BigUint::from(brute as u32));
    }

    #[test]
    fn gogam_routes_agree() {
        for n in 1..=4 {
            for k in [None, Some(1), Some(2)].into_iter().filter(|k| k.map_or(true, |k| k <= n)) {
                let via_s: Vec<GtTriangle> =
                    generate(&FamilySpec { kind: FamilyKind::Gogam, n, k, bound: None }).unwrap().collect();
                let via_filter: Vec<GtTriangle> =
                    generate(&FamilySpec { kind: FamilyKind::Gogam, n, k, bound: Some(n as i32) }).unwrap().collect();
                assert_eq!(via_s, via_filter, "n={n} k={k:?}");
            }
        }
    }

    #[test]
    fn spec_errors() {
        assert!(generate(&FamilySpec::new(FamilyKind::Gt, 3)).is_err());
        assert!(generate(&FamilySpec::trapezoid(FamilyKind::Gog, 3, 4)).is_err());
        assert!(generate(&FamilySpec::new(FamilyKind::Gog, 0)).is_err());
    }

    #[test]
    fn asm_counts() {
        for n in 1..=5 {
            assert_eq!(count_asms(n), a_n(n));
        }
    }
}
