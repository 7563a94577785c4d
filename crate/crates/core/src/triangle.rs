//! Gelfand–Tsetlin triangles and the Gog / Magog / GOGAm families.
//!
//! A triangle of size `n` has entries `x(i, j)` for `n >= i >= j >= 1`. Row `i`
//! holds `i` entries; row `n` is the top row. All indices in the public API are
//! 1-based.
//!
//! ```text
//!  x(n,1)    x(n,2)    ...    x(n,n)
//!       x(n-1,1)   ...   x(n-1,n-1)
//!                  ...
//!                 x(1,1)
//! ```
//!
//! The Gelfand–Tsetlin condition is `x(i+1,j) <= x(i,j) <= x(i+1,j+1)`, i.e.
//! the array weakly increases along both the south-east and north-east
//! directions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtTriangle {
    n: usize,
    // row i occupies entries[i(i-1)/2 .. i(i+1)/2]
    entries: Vec<i32>,
}

#[inline]
fn offset(i: usize, j: usize) -> usize {
    i * (i - 1) / 2 + (j - 1)
}

impl GtTriangle {
    /// Builds a triangle from `f(i, j)` for every `n >= i >= j >= 1`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i32) -> Self {
        assert!(n >= 1, "triangle size must be positive");
        let mut entries = Vec::with_capacity(n * (n + 1) / 2);
        for i in 1..=n {
            for j in 1..=i {
                entries.push(f(i, j));
            }
        }
        GtTriangle { n, entries }
    }

    /// Builds a triangle from rows listed top (row `n`) to bottom (row 1).
    pub fn from_rows_top_down(rows: &[Vec<i32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("triangle has no rows".into()));
        }
        for (pos, row) in rows.iter().enumerate() {
            let expected = n - pos;
            if row.len() != expected {
                return Err(Error::Shape(format!(
                    "row {} (from the top) has {} entries, expected {}",
                    pos + 1,
                    row.len(),
                    expected
                )));
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[n - i][j - 1]))
    }

    /// The constant triangle with every entry equal to `value`.
    pub fn constant(n: usize, value: i32) -> Self {
        Self::from_fn(n, |_, _| value)
    }

    /// The Gog triangle `x(i,j) = j`, image of the anti-diagonal permutation
    /// matrix. Every cell below the top row is an inversion.
    pub fn staircase_gog(n: usize) -> Self {
        Self::from_fn(n, |_, j| j as i32)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `x(i, j)`; panics when the index is outside the triangle.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        debug_assert!(1 <= j && j <= i && i <= self.n, "({i},{j}) outside size {}", self.n);
        self.entries[offset(i, j)]
    }

    /// Entry `x(i, j)` or `None` when `(i, j)` is not a cell of the triangle.
    pub fn try_get(&self, i: usize, j: usize) -> Option<i32> {
        (1 <= j && j <= i && i <= self.n).then(|| self.entries[offset(i, j)])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i32) {
        debug_assert!(1 <= j && j <= i && i <= self.n);
        self.entries[offset(i, j)] = value;
    }

    /// Row `i` read left to right (`j = 1..=i`).
    pub fn row(&self, i: usize) -> &[i32] {
        &self.entries[offset(i, 1)..offset(i, 1) + i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [i32] {
        let start = offset(i, 1);
        &mut self.entries[start..start + i]
    }

    pub fn rows_top_down(&self) -> Vec<Vec<i32>> {
        (1..=self.n).rev().map(|i| self.row(i).to_vec()).collect()
    }

    /// Every Gelfand–Tsetlin violation. An empty list means the triangle is valid.
    pub fn validate_gt(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in (1..=self.n).rev() {
            for j in 1..=i {
                let x = self.get(i, j);
                if x < 1 {
                    out.push(Violation::NonPositive { i, j, value: x });
                }
                if i < self.n {
                    let nw = self.get(i + 1, j);
                    let ne = self.get(i + 1, j + 1);
                    if x < nw {
                        out.push(Violation::BelowNorthWest { i, j, value: x, bound: nw });
                    }
                    if x > ne {
                        out.push(Violation::AboveNorthEast { i, j, value: x, bound: ne });
                    }
                }
            }
        }
        out
    }

    pub fn is_gt(&self) -> bool {
        self.validate_gt().is_empty()
    }

    /// Gog: top row is `1..=n` and rows strictly increase.
    ///
    /// Assumes a valid Gelfand–Tsetlin triangle.
    pub fn is_gog(&self) -> bool {
        let n = self.n;
        if self.row(n).iter().enumerate().any(|(p, &x)| x != p as i32 + 1) {
            return false;
        }
        (1..n).all(|i| self.row(i).windows(2).all(|w| w[0] < w[1]))
    }

    /// Magog: `x(i,i) <= i` for every `i`.
    pub fn is_magog(&self) -> bool {
        (1..=self.n).all(|i| self.get(i, i) <= i as i32)
    }

    /// The fixed-entry condition of an `(n, k)` trapezoid: cells with
    /// `i - j >= k` hold `j` for Gog and `1` for every other family.
    pub fn is_trapezoid(&self, kind: FamilyKind, k: usize) -> bool {
        for i in 1..=self.n {
            for j in 1..=i {
                if i - j >= k && self.get(i, j) != kind.pinned_value(j) {
                    return false;
                }
            }
        }
        true
    }

    /// Family membership, optionally restricted to `(n, k)` trapezoids.
    pub fn is_member(&self, kind: FamilyKind, k: Option<usize>) -> bool {
        if !self.is_gt() {
            return false;
        }
        let family = match kind {
            FamilyKind::Gt => true,
            FamilyKind::Gog => self.is_gog(),
            FamilyKind::Magog => self.is_magog(),
            FamilyKind::Gogam => crate::schutzenberger::is_gogam(self),
        };
        family && k.map_or(true, |k| self.is_trapezoid(kind, k))
    }

    /// Human-readable reasons why the triangle is not a member of `kind`
    /// (restricted to `(n, k)` trapezoids if `k` is given). Empty iff
    /// [`is_member`](Self::is_member) holds.
    pub fn membership_violations(&self, kind: FamilyKind, k: Option<usize>) -> Vec<String> {
        let n = self.n;
        let mut out: Vec<String> = self.validate_gt().iter().map(|v| format!("not Gelfand-Tsetlin at {v}")).collect();
        if !out.is_empty() {
            return out;
        }
        match kind {
            FamilyKind::Gt => {}
            FamilyKind::Gog => {
                for (p, &x) in self.row(n).iter().enumerate() {
                    if x != p as i32 + 1 {
                        out.push(format!("top row: x({n},{}) = {x}, expected {}", p + 1, p + 1));
                    }
                }
                for i in 1..n {
                    for j in 1..i {
                        if self.get(i, j) >= self.get(i, j + 1) {
                            out.push(format!("row {i} not strictly increasing at x({i},{j}) = {}", self.get(i, j)));
                        }
                    }
                }
            }
            FamilyKind::Magog => {
                for i in 1..=n {
                    if self.get(i, i) > i as i32 {
                        out.push(format!("x({i},{i}) = {} > {i}", self.get(i, i)));
                    }
                }
            }
            FamilyKind::Gogam => {
                let image = crate::schutzenberger::schutzenberger(self);
                for i in 1..=n {
                    if image.get(i, i) > i as i32 {
                        out.push(format!("Schutzenberger image has x({i},{i}) = {} > {i}", image.get(i, i)));
                    }
                }
            }
        }
        if let Some(k) = k {
            for i in 1..=n {
                for j in 1..=i {
                    let want = kind.pinned_value(j);
                    if i - j >= k && self.get(i, j) != want {
                        out.push(format!("({n},{k}) trapezoid: x({i},{j}) = {}, expected {want}", self.get(i, j)));
                    }
                }
            }
        }
        out
    }

    /// The `(n, 2, k)` Gog subclass: `x(j,j) = n` and
    /// `x(j,j-1) = max(x(k,k-1), j-1)` for every `j >= k`.
    ///
    /// `x(1,0)` does not exist; when `k = 1` it is read as minus infinity, so
    /// the second condition becomes `x(j,j-1) = j-1`.
    pub fn is_gog_trapezoid_n2k(&self, k: usize) -> Result<bool> {
        let n = self.n;
        if k < 1 || k > n {
            return Err(Error::OutOfRange(format!("k = {k} not in 1..={n}")));
        }
        let anchor = if k >= 2 { Some(self.get(k, k - 1)) } else { None };
        for j in k..=n {
            if self.get(j, j) != n as i32 {
                return Ok(false);
            }
            if j >= 2 {
                let target = anchor.map_or(j as i32 - 1, |a| a.max(j as i32 - 1));
                if self.get(j, j - 1) != target {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The `(n, 2, k)` Magog subclass: an `(n, 2)` Magog trapezoid with
    /// `x(i,j) = 1` for `j <= k`.
    pub fn is_magog_trapezoid_n2k(&self, k: usize) -> bool {
        (1..=self.n).all(|i| (1..=i.min(k)).all(|j| self.get(i, j) == 1))
    }

    /// Inversions `(i, j)` with `x(i,j) = x(i+1,j)`, in lexicographic order.
    pub fn inversions(&self) -> Vec<Inversion> {
        let mut out = Vec::new();
        for i in 1..self.n {
            for j in 1..=i {
                if self.get(i, j) == self.get(i + 1, j) {
                    out.push(Inversion { i, j });
                }
            }
        }
        out
    }

    /// Number of inversions `(k, l)` with `(i, j) = (k + p, l + p)` for some
    /// `1 <= p <= n - k`.
    pub fn covering_count(&self, i: usize, j: usize) -> usize {
        (1..j)
            .map(|p| (i - p, j - p))
            .filter(|&(k, l)| self.get(k, l) == self.get(k + 1, l))
            .count()
    }

    /// Multi-line text form: `n`, then rows from the top.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for i in (1..=self.n).rev() {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad size line {header:?}")))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|tok| tok.parse::<i32>().map_err(|_| Error::Parse(format!("bad entry {tok:?}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Shape(format!("size line says {n} but {} rows follow", rows.len())));
        }
        Self::from_rows_top_down(&rows)
    }

    pub fn to_json(&self) -> TriangleJson {
        TriangleJson { n: self.n, rows_top_down: self.rows_top_down() }
    }

    pub fn from_json(json: &TriangleJson) -> Result<Self> {
        let t = Self::from_rows_top_down(&json.rows_top_down)?;
        if t.n != json.n {
            return Err(Error::Shape(format!("n = {} but {} rows given", json.n, t.n)));
        }
        Ok(t)
    }

    /// Rows separated by ` / `, top first. Used in reports and test names.
    pub fn compact(&self) -> String {
        (1..=self.n)
            .rev()
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

impl fmt::Display for GtTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in (1..=self.n).rev() {
            let indent = (self.n - i) * (width + 1) / 2;
            write!(f, "{:indent$}", "")?;
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleJson {
    pub n: usize,
    pub rows_top_down: Vec<Vec<i32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositive { i: usize, j: usize, value: i32 },
    /// `x(i,j) < x(i+1,j)`
    BelowNorthWest { i: usize, j: usize, value: i32, bound: i32 },
    /// `x(i,j) > x(i+1,j+1)`
    AboveNorthEast { i: usize, j: usize, value: i32, bound: i32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NonPositive { i, j, value } => {
                write!(f, "({i},{j}): entry {value} is not positive")
            }
            Violation::BelowNorthWest { i, j, value, bound } => {
                write!(f, "({i},{j}): {value} < x({},{j})={bound}", i + 1)
            }
            Violation::AboveNorthEast { i, j, value, bound } => {
                write!(f, "({i},{j}): {value} > x({},{})={bound}", i + 1, j + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inversion {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Gt,
    Gog,
    Magog,
    Gogam,
}

impl FamilyKind {
    /// Value of a pinned trapezoid cell in diagonal `j`.
    pub fn pinned_value(self, j: usize) -> i32 {
        match self {
            FamilyKind::Gog => j as i32,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Gt => "gt",
            FamilyKind::Gog => "gog",
            FamilyKind::Magog => "magog",
            FamilyKind::Gogam => "gogam",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gt" => Ok(FamilyKind::Gt),
            "gog" => Ok(FamilyKind::Gog),
            "magog" => Ok(FamilyKind::Magog),
            "gogam" => Ok(FamilyKind::Gogam),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(rows: &[&[i32]]) -> GtTriangle {
        GtTriangle::from_rows_top_down(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn membership_violations_agree_with_predicates() {
        let gt = tri(&[&[1, 2, 2, 3, 6], &[1, 2, 2, 5], &[2, 2, 4], &[2, 4], &[3]]);
        let gog_reasons = gt.membership_violations(FamilyKind::Gog, None);
        assert!(gog_reasons.iter().any(|r| r.starts_with("top row")));
        assert!(gt.membership_violations(FamilyKind::Gt, None).is_empty());
        for t in crate::enumerate::generate(&crate::enumerate::FamilySpec {
            kind: FamilyKind::Gt,
            n: 3,
            k: None,
            bound: Some(4),
        })
        .unwrap()
        {
            for kind in [FamilyKind::Gt, FamilyKind::Gog, FamilyKind::Magog, FamilyKind::Gogam] {
                for k in [None, Some(1), Some(2)] {
                    assert_eq!(t.membership_violations(kind, k).is_empty(), t.is_member(kind, k), "{kind:?} {k:?} {}", t.compact());
                }
            }
        }
    }

    #[test]
    fn sample_gt_example_is_valid() {
        let t = tri(&[&[1, 2, 2, 3, 6], &[1, 2, 2, 5], &[2, 2, 4], &[2, 4], &[3]]);
        assert!(t.validate_gt().is_empty());
        assert!(!t.is_gog());
    }

    #[test]
    fn single_entry_triangle() {
        let t = tri(&[&[5]]);
        assert!(t.is_gt());
        assert!(!tri(&[&[0]]).is_gt());
    }

    #[test]
    fn reports_every_violation() {
        let t = tri(&[&[1, 2], &[3]]);
        let v = t.validate_gt();
        assert_eq!(v, vec![Violation::AboveNorthEast { i: 1, j: 1, value: 3, bound: 2 }]);
        assert_eq!(v[0].to_string(), "(1,1): 3 > x(2,2)=2");

        let bad = tri(&[&[2, 1, 3], &[0, 4], &[5]]);
        // (2,1): 0 < 2 and non-positive; (2,2): 4 > 3; (1,1): 5 > 4
        assert_eq!(bad.validate_gt().len(), 4);
    }

    #[test]
    fn malformed_shape_is_an_error() {
        let err = GtTriangle::from_rows_top_down(&[vec![1, 2], vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
        assert!(GtTriangle::parse_text("3\n1 2 3\n1 2\n").is_err());
    }

    #[test]
    fn gog_predicate() {
        assert!(tri(&[&[1, 2, 3, 4, 5], &[1, 3, 4, 5], &[1, 4, 5], &[2, 4], &[3]]).is_gog());
        assert!(tri(&[&[1, 2], &[1]]).is_gog());
        assert!(tri(&[&[1, 2], &[2]]).is_gog());
        assert!(!tri(&[&[1, 2, 3], &[2, 2], &[2]]).is_gog());
    }

    #[test]
    fn magog_predicate() {
        assert!(tri(&[&[1, 1], &[1]]).is_magog());
        assert!(tri(&[&[1, 2], &[1]]).is_magog());
        assert!(!tri(&[&[1, 2], &[2]]).is_magog());
        assert!(!tri(&[&[1, 1, 1, 2, 3], &[1, 1, 2, 3], &[1, 1, 3], &[1, 3], &[2]]).is_magog());
    }

    #[test]
    fn trapezoid_predicate() {
        let trap = tri(&[&[1, 2, 3, 4, 5], &[1, 2, 4, 5], &[1, 3, 4], &[1, 3], &[2]]);
        assert!(trap.is_trapezoid(FamilyKind::Gog, 2));
        let not = tri(&[&[1, 2, 3, 4, 5], &[1, 3, 4, 5], &[1, 4, 5], &[2, 4], &[3]]);
        assert!(!not.is_trapezoid(FamilyKind::Gog, 2));
        let ones = tri(&[&[1, 1, 2], &[1, 2], &[2]]);
        assert!(ones.is_trapezoid(FamilyKind::Magog, 2));
        assert!(ones.is_trapezoid(FamilyKind::Gogam, 1));
        assert!(!tri(&[&[1, 2, 2], &[1, 2], &[2]]).is_trapezoid(FamilyKind::Magog, 1));
    }

    #[test]
    fn n2k_subclass() {
        let t = tri(&[&[1, 2, 3], &[1, 3], &[1]]);
        assert!(t.is_gog_trapezoid_n2k(2).unwrap());
        assert!(t.is_gog_trapezoid_n2k(3).unwrap());
        assert!(t.is_gog_trapezoid_n2k(0).is_err());
        assert!(t.is_gog_trapezoid_n2k(4).is_err());
        // x(1,0) is read as minus infinity, so x(2,1) must be 1 here
        assert!(!tri(&[&[1, 2, 3], &[2, 3], &[3]]).is_gog_trapezoid_n2k(1).unwrap());
        assert!(tri(&[&[1, 2, 3], &[1, 3], &[3]]).is_gog_trapezoid_n2k(1).unwrap());
    }

    #[test]
    fn inversions_of_sample_example() {
        let t = tri(&[&[1, 2, 3, 4, 5], &[1, 3, 4, 5], &[1, 4, 5], &[2, 4], &[3]]);
        let inv: Vec<(usize, usize)> = t.inversions().iter().map(|v| (v.i, v.j)).collect();
        assert_eq!(inv, vec![(2, 2), (3, 1), (4, 1)]);
        assert!(tri(&[&[1, 2], &[2]]).inversions().is_empty());
        assert_eq!(tri(&[&[1, 2], &[1]]).inversions(), vec![Inversion { i: 1, j: 1 }]);
        assert_eq!(GtTriangle::staircase_gog(6).inversions().len(), 15);
    }

    #[test]
    fn covering_of_a_single_inversion() {
        // inversions (3,1) and (3,2); the second covers (4,3) and (5,4)
        let t = tri(&[&[1, 2, 3, 4, 5], &[2, 3, 4, 5], &[2, 3, 5], &[3, 5], &[4]]);
        assert_eq!(t.inversions(), vec![Inversion { i: 3, j: 1 }, Inversion { i: 3, j: 2 }]);
        let covered: Vec<(usize, usize, usize)> = (1..=5)
            .flat_map(|i| (1..=i).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, t.covering_count(i, j)))
            .filter(|&(_, _, c)| c > 0)
            .collect();
        assert_eq!(covered, vec![(4, 2, 1), (4, 3, 1), (5, 3, 1), (5, 4, 1)]);

        let u = tri(&[&[1, 2, 3], &[1, 2], &[2]]);
        assert_eq!(u.covering_count(3, 2), 1);
        assert_eq!(u.covering_count(3, 3), 1);
        assert_eq!(u.covering_count(3, 1), 0);
        for (i, j) in [(1, 1), (2, 1), (2, 2)] {
            assert_eq!(u.covering_count(i, j), 0);
        }
        let free = tri(&[&[1, 2, 3], &[2, 3], &[3]]);
        assert!((1..=3).all(|i| (1..=i).all(|j| free.covering_count(i, j) == 0)));
    }

    #[test]
    fn text_and_json_round_trip() {
        let t = tri(&[&[1, 2, 2, 3, 6], &[1, 2, 2, 5], &[2, 2, 4], &[2, 4], &[3]]);
        let text = t.to_text();
        assert!(text.starts_with("5\n1 2 2 3 6\n"));
        assert_eq!(GtTriangle::parse_text(&text).unwrap(), t);
        let json = serde_json::to_string(&t.to_json()).unwrap();
        let back: TriangleJson = serde_json::from_str(&json).unwrap();
        assert_eq!(GtTriangle::from_json(&back).unwrap(), t);
        assert_eq!(t.compact(), "1 2 2 3 6 / 1 2 2 5 / 2 2 4 / 2 4 / 3");
    }
}
