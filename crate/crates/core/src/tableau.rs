//! Semistandard tableaux, reading words and RSK row insertion.
//!
//! Tableaux use French notation: `rows[0]` is the bottom (longest) row.
//! This module gives a second, independent route to the Schützenberger
//! involution on Gelfand–Tsetlin triangles: triangle → tableau → reading
//! word → reverse-complement → RSK insertion → triangle.

use std::fmt;

use crate::error::{Error, Result};
use crate::triangle::GtTriangle;

#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct Ssyt {
    /// Bottom row first.
    pub rows: Vec<Vec<u32>>,
}

pub type Word = Vec<u32>;

impl Ssyt {
    pub fn new(rows: Vec<Vec<u32>>) -> Self {
        Ssyt { rows }
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Rows weakly increase, columns strictly increase upward, row lengths
    /// weakly decrease upward.
    pub fn is_valid(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let shape_ok = self.rows.windows(2).all(|w| w[0].len() >= w[1].len());
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(up, down)| up > down));
        rows_ok && shape_ok && cols_ok
    }

    pub fn max_letter(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Ssyt {
    /// French notation: the top line printed is the shortest row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows.iter().rev() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The tableau whose letters `<= i` form the partition given by row `i` of
/// the triangle read right to left.
pub fn gt_to_ssyt(t: &GtTriangle) -> Ssyt {
    let n = t.n();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); n];
    for i in 1..=n {
        // part r (1-based, largest first) of shape i is x(i, i+1-r)
        for r in 1..=i {
            let now = t.get(i, i + 1 - r);
            let before = if r < i { t.get(i - 1, i - r) } else { 0 };
            let count = (now - before).max(0) as usize;
            rows[r - 1].extend(std::iter::repeat(i as u32).take(count));
        }
    }
    while rows.last().is_some_and(Vec::is_empty) {
        rows.pop();
    }
    Ssyt { rows }
}

/// Inverse of [`gt_to_ssyt`] for an alphabet bound `n`.
pub fn ssyt_to_gt(s: &Ssyt, n: usize) -> Result<GtTriangle> {
    if s.max_letter() as usize > n {
        return Err(Error::OutOfRange(format!("letter {} exceeds alphabet bound {n}", s.max_letter())));
    }
    if s.rows.len() > n {
        return Err(Error::OutOfRange(format!("{} rows exceed alphabet bound {n}", s.rows.len())));
    }
    Ok(GtTriangle::from_fn(n, |i, j| {
        // part r = i+1-j of the shape formed by letters <= i
        s.rows
            .get(i - j)
            .map_or(0, |row| row.iter().filter(|&&x| x as usize <= i).count() as i32)
    }))
}

/// Rows from top (shortest) to bottom, each left to right.
pub fn reading_word(s: &Ssyt) -> Word {
    s.rows.iter().rev().flatten().copied().collect()
}

/// Reverse the word and replace each letter `i` by `n + 1 - i`.
pub fn word_complement_reverse(w: &[u32], n: u32) -> Word {
    w.iter().rev().map(|&x| n + 1 - x).collect()
}

/// Row insertion: each letter bumps the leftmost strictly greater entry of
/// the row into the next row up.
pub fn rsk_insertion_tableau(w: &[u32]) -> Ssyt {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &letter in w {
        let mut carry = letter;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![carry]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&x| x <= carry);
            if pos == row.len() {
                row.push(carry);
                break;
            }
            carry = std::mem::replace(&mut row[pos], carry);
            r += 1;
        }
    }
    Ssyt { rows }
}

/// The Schützenberger involution computed through words and RSK.
pub fn schutzenberger_word_oracle(t: &GtTriangle) -> GtTriangle {
    let n = t.n();
    let word = reading_word(&gt_to_ssyt(t));
    let image = rsk_insertion_tableau(&word_complement_reverse(&word, n as u32));
    ssyt_to_gt(&image, n).expect("insertion preserves the alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_gt() -> GtTriangle {
        GtTriangle::from_rows_top_down(&[
            vec![1, 2, 2, 3, 6],
            vec![1, 2, 2, 5],
            vec![2, 2, 4],
            vec![2, 4],
            vec![3],
        ])
        .unwrap()
    }

    fn sample_tableau() -> Ssyt {
        Ssyt::new(vec![vec![1, 1, 1, 2, 4, 5], vec![2, 2, 5], vec![3, 3], vec![4, 5], vec![5]])
    }

    /// Longest weakly increasing subsequence by O(len^2) dynamic programming.
    fn lnds(w: &[u32]) -> usize {
        let mut best = vec![1usize; w.len()];
        for i in 0..w.len() {
            for j in 0..i {
                if w[j] <= w[i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    #[test]
    fn sample_triangle_to_tableau() {
        let s = gt_to_ssyt(&sample_gt());
        assert_eq!(s, sample_tableau());
        assert!(s.is_valid());
        assert_eq!(ssyt_to_gt(&s, 5).unwrap(), sample_gt());
    }

    #[test]
    fn small_triangles_to_tableau() {
        let t = GtTriangle::from_rows_top_down(&[vec![1, 2], vec![1]]).unwrap();
        assert_eq!(gt_to_ssyt(&t).rows, vec![vec![1, 2], vec![2]]);
        let single = GtTriangle::from_rows_top_down(&[vec![4]]).unwrap();
        assert_eq!(gt_to_ssyt(&single).rows, vec![vec![1, 1, 1, 1]]);
        assert_eq!(ssyt_to_gt(&gt_to_ssyt(&single), 1).unwrap(), single);
    }

    #[test]
    fn alphabet_bound_is_enforced() {
        assert!(ssyt_to_gt(&sample_tableau(), 4).is_err());
    }

    #[test]
    fn sample_reading_word() {
        let w = reading_word(&sample_tableau());
        assert_eq!(w, vec![5, 4, 5, 3, 3, 2, 2, 5, 1, 1, 1, 2, 4, 5]);
        let sw = word_complement_reverse(&w, 5);
        assert_eq!(sw, vec![1, 2, 4, 5, 5, 5, 1, 4, 4, 3, 3, 1, 2, 1]);
        assert_eq!(word_complement_reverse(&sw, 5), w);
        assert!(word_complement_reverse(&[], 5).is_empty());
    }

    #[test]
    fn reading_word_edge_shapes() {
        assert_eq!(reading_word(&Ssyt::new(vec![vec![1, 1, 3]])), vec![1, 1, 3]);
        let column = Ssyt::new(vec![vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(reading_word(&column), vec![4, 3, 2, 1]);
    }

    #[test]
    fn reading_word_runs_are_rows() {
        // maximal nondecreasing runs of the reading word are the rows, top first
        let s = sample_tableau();
        let w = reading_word(&s);
        let mut runs: Vec<Vec<u32>> = vec![vec![w[0]]];
        for pair in w.windows(2) {
            if pair[1] >= pair[0] {
                runs.last_mut().unwrap().push(pair[1]);
            } else {
                runs.push(vec![pair[1]]);
            }
        }
        let top_down: Vec<Vec<u32>> = s.rows.iter().rev().cloned().collect();
        assert_eq!(runs, top_down);
    }

    #[test]
    fn textbook_insertions() {
        assert_eq!(rsk_insertion_tableau(&[2, 1]).rows, vec![vec![1], vec![2]]);
        assert_eq!(rsk_insertion_tableau(&[1, 1, 2]).rows, vec![vec![1, 1, 2]]);
        // a reading word reinserts to its own tableau
        let s = sample_tableau();
        assert_eq!(rsk_insertion_tableau(&reading_word(&s)), s);
    }

    #[test]
    fn word_oracle_small_cases() {
        let t = GtTriangle::from_rows_top_down(&[vec![1, 2], vec![2]]).unwrap();
        let expected = GtTriangle::from_rows_top_down(&[vec![1, 2], vec![1]]).unwrap();
        assert_eq!(schutzenberger_word_oracle(&t), expected);
        assert_eq!(schutzenberger_word_oracle(&expected), t);
        let fixed = GtTriangle::constant(2, 1);
        assert_eq!(schutzenberger_word_oracle(&fixed), fixed);
    }

    #[test]
    fn longest_row_matches_lnds_on_random_words() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let len = rng.gen_range(0..25);
            let alphabet = rng.gen_range(1..7u32);
            let w: Word = (0..len).map(|_| rng.gen_range(1..=alphabet)).collect();
            let p = rsk_insertion_tableau(&w);
            assert!(p.is_valid());
            assert_eq!(p.rows.first().map_or(0, Vec::len), lnds(&w), "{w:?}");
        }
    }

    proptest! {
        #[test]
        fn insertion_is_a_valid_tableau_on_the_same_letters(w in proptest::collection::vec(1u32..6, 0..30)) {
            let p = rsk_insertion_tableau(&w);
            prop_assert!(p.is_valid());
            let mut letters: Vec<u32> = p.rows.iter().flatten().copied().collect();
            letters.sort_unstable();
            let mut sorted = w.clone();
            sorted.sort_unstable();
            prop_assert_eq!(letters, sorted);
        }
    }
}
