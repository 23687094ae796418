//! Dense Gaussian elimination over a [`Field`].

use crate::field::{Field, FieldElement};

pub type Matrix = Vec<Vec<FieldElement>>;

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// column of each nonzero row.
pub fn row_reduce(field: &Field, rows: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = field.inv(rows[next][col]).expect("pivot is nonzero");
        for x in rows[next].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let factor = row[col];
            if i == next || factor.is_zero() {
                continue;
            }
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

pub fn rank(field: &Field, matrix: &[Vec<FieldElement>]) -> usize {
    let mut m = matrix.to_vec();
    row_reduce(field, &mut m).len()
}

/// Basis of `{ y : M y = 0 }`.
pub fn nullspace(field: &Field, matrix: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m = matrix.to_vec();
    let pivots = row_reduce(field, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![FieldElement::ZERO; cols];
            y[f] = FieldElement::ONE;
            for (row, &p) in pivots.iter().enumerate() {
                y[p] = field.neg(m[row][f]);
            }
            y
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<FieldElement>),
    Underdetermined,
    Inconsistent,
}

/// Solves `A x = b`.
pub fn solve(field: &Field, a: &[Vec<FieldElement>], b: &[FieldElement]) -> Solution {
    let unknowns = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = row_reduce(field, &mut aug);
    if pivots.last() == Some(&unknowns) {
        return Solution::Inconsistent;
    }
    if pivots.len() < unknowns {
        return Solution::Underdetermined;
    }
    Solution::Unique(aug[..unknowns].iter().map(|r| r[unknowns]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: &Field, rows: &[&[u64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| f.element(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn rank_examples() {
        let f = Field::new(13).unwrap();
        let id = m(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rank(&f, &id), 3);
        let rep = m(&f, &[&[1, 2, 3], &[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(rank(&f, &rep), 2);
        // second row is 5x the first mod 13
        let dep = m(&f, &[&[1, 2, 3], &[5, 10, 2]]);
        assert_eq!(rank(&f, &dep), 1);
        assert_eq!(rank(&f, &[]), 0);
    }

    #[test]
    fn nullspace_annihilates() {
        let f = Field::new(16).unwrap();
        let a = m(&f, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        let ns = nullspace(&f, &a);
        assert_eq!(ns.len(), 4 - rank(&f, &a));
        for y in &ns {
            for row in &a {
                let dot = row
                    .iter()
                    .zip(y)
                    .fold(FieldElement::ZERO, |acc, (&x, &z)| f.add(acc, f.mul(x, z)));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn solve_cases() {
        let f = Field::new(13).unwrap();
        let a = m(&f, &[&[1, 1], &[1, 2], &[1, 3]]);
        let x = m(&f, &[&[4, 7]])[0].clone();
        let b: Vec<_> = a.iter().map(|r| f.add(f.mul(r[0], x[0]), f.mul(r[1], x[1]))).collect();
        assert_eq!(solve(&f, &a, &b), Solution::Unique(x));
        let mut bad = b.clone();
        bad[2] = f.add(bad[2], FieldElement::ONE);
        assert_eq!(solve(&f, &a, &bad), Solution::Inconsistent);
        assert_eq!(solve(&f, &a[..1], &b[..1]), Solution::Underdetermined);
    }
}
