//! Alternating sign matrices and their bijection with Gog triangles.
//!
//! Row `r` of the column-suffix-sum matrix `sum_{k >= r} M[k][j]` is a 0/1
//! vector with `n - r + 1` ones; the positions of those ones, read in
//! increasing order, form row `n - r + 1` of the Gog triangle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangle::GtTriangle;

/// JSON form: `{"n": 3, "rows": [[0,1,0],[1,-1,1],[0,1,0]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsmJson {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    cells: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AsmViolation {
    RowPrefix { row: usize, col: usize, sum: i32 },
    ColumnPrefix { row: usize, col: usize, sum: i32 },
    RowSum { row: usize, sum: i32 },
    ColumnSum { col: usize, sum: i32 },
}

impl fmt::Display for AsmViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AsmViolation::RowPrefix { row, col, sum } => {
                write!(f, "row {row}: partial sum {sum} through column {col} breaks sign alternation")
            }
            AsmViolation::ColumnPrefix { row, col, sum } => {
                write!(f, "column {col}: partial sum {sum} through row {row} breaks sign alternation")
            }
            AsmViolation::RowSum { row, sum } => write!(f, "row {row} sums to {sum}, expected 1"),
            AsmViolation::ColumnSum { col, sum } => write!(f, "column {col} sums to {sum}, expected 1"),
        }
    }
}

impl Asm {
    /// Builds a square matrix over {-1, 0, 1}; does not check the alternating
    /// sign conditions (see [`Asm::validate`]).
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("matrix has no rows".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {} has {} entries, expected {n}", r + 1, row.len())));
            }
            for (c, &value) in row.iter().enumerate() {
                if !(-1..=1).contains(&value) {
                    return Err(Error::AsmEntry { row: r + 1, col: c + 1, value });
                }
                cells.push(value as i8);
            }
        }
        Ok(Asm { n, cells })
    }

    pub fn identity(n: usize) -> Self {
        let mut cells = vec![0; n * n];
        for r in 0..n {
            cells[r * n + r] = 1;
        }
        Asm { n, cells }
    }

    pub(crate) fn from_cells(n: usize, cells: Vec<i8>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        Asm { n, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `M[row][col]`, 1-based.
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.cells[(row - 1) * self.n + (col - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.cells.chunks(self.n).map(<[i8]>::to_vec).collect()
    }

    /// Nonzero entries alternate in sign starting and ending with +1 exactly
    /// when every prefix sum along a row or column is 0 or 1 and every full
    /// sum is 1.
    pub fn validate(&self) -> Vec<AsmViolation> {
        let n = self.n;
        let mut out = Vec::new();
        for row in 1..=n {
            let mut sum = 0i32;
            for col in 1..=n {
                sum += i32::from(self.get(row, col));
                if !(0..=1).contains(&sum) {
                    out.push(AsmViolation::RowPrefix { row, col, sum });
                }
            }
            if sum != 1 {
                out.push(AsmViolation::RowSum { row, sum });
            }
        }
        for col in 1..=n {
            let mut sum = 0i32;
            for row in 1..=n {
                sum += i32::from(self.get(row, col));
                if !(0..=1).contains(&sum) {
                    out.push(AsmViolation::ColumnPrefix { row, col, sum });
                }
            }
            if sum != 1 {
                out.push(AsmViolation::ColumnSum { col, sum });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The Gog triangle of a valid ASM.
    pub fn to_gog(&self) -> GtTriangle {
        let n = self.n;
        // suffix[r-1][c-1] = sum_{k=r..n} M[k][c]
        let mut suffix = vec![vec![0i32; n]; n + 1];
        for r in (1..=n).rev() {
            for c in 1..=n {
                suffix[r - 1][c - 1] = suffix[r][c - 1] + i32::from(self.get(r, c));
            }
        }
        let mut t = GtTriangle::constant(n, 0);
        for i in 1..=n {
            let ones = &suffix[n - i];
            let cols = (1..=n).filter(|&c| ones[c - 1] == 1).map(|c| c as i32);
            for (slot, col) in t.row_mut(i).iter_mut().zip(cols) {
                *slot = col;
            }
        }
        t
    }

    /// The inverse of [`Asm::to_gog`]: differences of the 0/1 indicator
    /// vectors of consecutive triangle rows.
    pub fn from_gog(t: &GtTriangle) -> Self {
        let n = t.n();
        let indicator = |i: usize| -> Vec<i8> {
            let mut v = vec![0i8; n];
            if i >= 1 {
                for &x in t.row(i) {
                    v[x as usize - 1] = 1;
                }
            }
            v
        };
        let mut cells = Vec::with_capacity(n * n);
        for r in 1..=n {
            let upper = indicator(n - r + 1);
            let lower = indicator(n - r);
            cells.extend(upper.iter().zip(&lower).map(|(a, b)| a - b));
        }
        Asm { n, cells }
    }

    /// Inversion number: [`Asm::inversion_sum`] minus the number of `-1`
    /// entries. Agrees with the inversion count of the Gog triangle.
    pub fn inversion_number(&self) -> i64 {
        self.inversion_sum() - self.minus_ones() as i64
    }

    pub fn minus_ones(&self) -> usize {
        self.cells.iter().filter(|&&x| x == -1).count()
    }

    /// `sum M[i][j] * M[i'][j']` over `i < i'` and `j > j'`.
    pub fn inversion_sum(&self) -> i64 {
        let n = self.n;
        let mut total = 0i64;
        for i in 1..=n {
            for j in 1..=n {
                let a = i64::from(self.get(i, j));
                if a == 0 {
                    continue;
                }
                for i2 in i + 1..=n {
                    for j2 in 1..j {
                        total += a * i64::from(self.get(i2, j2));
                    }
                }
            }
        }
        total
    }

    /// Column (1-based) of the +1 in the bottom row.
    pub fn bottom_one_column(&self) -> usize {
        (1..=self.n)
            .find(|&c| self.get(self.n, c) == 1)
            .expect("a valid ASM has a +1 in its bottom row")
    }

    pub fn to_json(&self) -> AsmJson {
        AsmJson { n: self.n, rows: self.rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect() }
    }

    pub fn from_json(json: &AsmJson) -> Result<Self> {
        let a = Self::from_rows(&json.rows)?;
        if a.n != json.n {
            return Err(Error::Shape(format!("n = {} but {} rows given", json.n, a.n)));
        }
        Ok(a)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.cells.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&cells.join(" "));
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
        let rows = lines
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| tok.parse::<i64>().map_err(|_| Error::Parse(format!("bad entry {tok:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != n {
            return Err(Error::Shape(format!("size line says {n} but {} rows follow", rows.len())));
        }
        Self::from_rows(&rows)
    }
}

/// Every ASM of size `n`, in lexicographic order of the row-major cell
/// sequence with `-1 < 0 < 1`.
pub fn all_asms(n: usize) -> Vec<Asm> {
    fn walk(n: usize, pos: usize, cells: &mut Vec<i8>, col: &mut [i32], row_sum: i32, out: &mut Vec<Asm>) {
        if pos == n * n {
            out.push(Asm::from_cells(n, cells.clone()));
            return;
        }
        let (r, c) = (pos / n, pos % n);
        for value in [-1i8, 0, 1] {
            let rs = row_sum + i32::from(value);
            let cs = col[c] + i32::from(value);
            if !(0..=1).contains(&rs) || !(0..=1).contains(&cs) {
                continue;
            }
            if c == n - 1 && rs != 1 {
                continue;
            }
            if r == n - 1 && cs != 1 {
                continue;
            }
            cells.push(value);
            col[c] = cs;
            walk(n, pos + 1, cells, col, if c == n - 1 { 0 } else { rs }, out);
            col[c] -= i32::from(value);
            cells.pop();
        }
    }
    let mut out = Vec::new();
    walk(n, 0, &mut Vec::with_capacity(n * n), &mut vec![0; n], 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample_asm() -> Asm {
        Asm::from_rows(&[
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![1, -1, 0, 0, 1],
            vec![0, 1, -1, 1, 0],
            vec![0, 0, 1, 0, 0],
        ])
        .unwrap()
    }

    fn sample_gog() -> GtTriangle {
        GtTriangle::from_rows_top_down(&[
            vec![1, 2, 3, 4, 5],
            vec![1, 3, 4, 5],
            vec![1, 4, 5],
            vec![2, 4],
            vec![3],
        ])
        .unwrap()
    }

    #[test]
    fn validates_sample_matrix_and_identity() {
        assert!(sample_asm().is_valid());
        for n in 1..6 {
            assert!(Asm::identity(n).is_valid());
        }
    }

    #[test]
    fn zero_row_is_rejected() {
        let m = Asm::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap();
        let v = m.validate();
        assert!(v.contains(&AsmViolation::RowSum { row: 2, sum: 0 }));
        assert!(v.contains(&AsmViolation::ColumnSum { col: 2, sum: 0 }));
    }

    #[test]
    fn bad_entries_are_a_distinct_error() {
        let err = Asm::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::AsmEntry { row: 1, col: 1, value: 2 });
        let err = Asm::from_rows(&[vec![1, 0]]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn sign_alternation_violation() {
        // row sums are 1 but row 1 starts with -1
        let m = Asm::from_rows(&[vec![-1, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]).unwrap();
        assert!(m
            .validate()
            .iter()
            .any(|v| matches!(v, AsmViolation::RowPrefix { row: 1, col: 1, .. })));
    }

    #[test]
    fn sample_matrix_maps_to_sample_gog() {
        assert_eq!(sample_asm().to_gog(), sample_gog());
        assert_eq!(Asm::from_gog(&sample_gog()), sample_asm());
    }

    #[test]
    fn identity_and_antidiagonal() {
        for n in 1..6 {
            let top_heavy = GtTriangle::from_fn(n, |i, j| (n - i + j) as i32);
            assert_eq!(Asm::identity(n).to_gog(), top_heavy);
            assert_eq!(Asm::from_gog(&top_heavy), Asm::identity(n));
            assert_eq!(Asm::identity(n).inversion_number(), 0);
            assert!(top_heavy.inversions().is_empty());

            let anti = Asm::from_cells(n, (0..n * n).map(|p| i8::from(p / n + p % n == n - 1)).collect());
            assert_eq!(anti.to_gog(), GtTriangle::staircase_gog(n));
            assert_eq!(anti.inversion_number(), (n * (n - 1) / 2) as i64);
        }
        let anti = Asm::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(anti.to_gog(), GtTriangle::from_rows_top_down(&[vec![1, 2], vec![1]]).unwrap());
        assert_eq!(anti.inversion_number(), 1);
    }

    #[test]
    fn inversion_number_matches_triangle() {
        assert_eq!(sample_asm().inversion_sum(), 5);
        assert_eq!(sample_asm().minus_ones(), 2);
        assert_eq!(sample_asm().inversion_number(), 3);
        assert_eq!(sample_gog().inversions().len(), 3);
        assert_eq!(sample_asm().bottom_one_column(), 3);
    }

    #[test]
    fn round_trip_size_three() {
        let asms = all_asms(3);
        assert_eq!(asms.len(), 7);
        for a in &asms {
            let t = a.to_gog();
            assert!(t.is_gt() && t.is_gog(), "{}", t.compact());
            assert_eq!(&Asm::from_gog(&t), a);
        }
    }

    #[test]
    fn text_round_trip() {
        let text = sample_asm().to_text();
        assert!(text.contains("1 -1 0 0 1"));
        assert_eq!(Asm::parse_text(&text).unwrap(), sample_asm());
    }
}
