//! Exact two-phase tableau simplex with Bland's rule.
//!
//! Problems are in standard form: maximise `c . x` subject to `A x = b`, `x >= 0`.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        self.rows[i].last().expect("tableau row has rhs")
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        self.basis[r] = c;
    }

    /// Maximises `obj . x` over columns `0..ncols`; returns false if unbounded.
    fn optimise(&mut self, obj: &[Rational], ncols: usize) -> bool {
        loop {
            let entering = (0..ncols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = obj[j].clone();
                for (i, &bv) in self.basis.iter().enumerate() {
                    rc -= &obj[bv] * &self.rows[i][j];
                }
                rc.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let m = self.a.len();
        let n = self.c.len();
        let width = n + m + 1;
        let mut rows = Vec::with_capacity(m);
        for (i, (arow, bi)) in self.a.iter().zip(&self.b).enumerate() {
            let flip = bi.is_negative();
            let mut row = vec![Rational::zero(); width];
            for (j, v) in arow.iter().enumerate() {
                row[j] = if flip { -v } else { v.clone() };
            }
            row[n + i] = Rational::one();
            row[width - 1] = if flip { -bi } else { bi.clone() };
            rows.push(row);
        }
        let mut t = Tableau { rows, basis: (n..n + m).collect() };

        // Phase 1: maximise -(sum of artificials).
        let mut phase1 = vec![Rational::zero(); n + m];
        for v in phase1.iter_mut().skip(n) {
            *v = -Rational::one();
        }
        t.optimise(&phase1, n + m);
        let infeasibility: Rational = (0..m).filter(|&i| t.basis[i] >= n).map(|i| t.rhs(i).clone()).sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }

        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n {
                match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in t.rows.iter_mut() {
            let rhs = row.pop().expect("rhs");
            row.truncate(n);
            row.push(rhs);
        }

        if !t.optimise(&self.c, n) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for (i, &bv) in t.basis.iter().enumerate() {
            x[bv] = t.rhs(i).clone();
        }
        let value = x.iter().zip(&self.c).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn simple_optimum() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let lp = LinearProgram {
            a: vec![v(&[1, 2, 1, 0]), v(&[3, 1, 0, 1])],
            b: v(&[4, 6]),
            c: v(&[1, 1, 0, 0]),
        };
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, frac(14, 5));
                assert_eq!(&x[..2], &[frac(8, 5), frac(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible() {
        // x + y = -1 with x, y >= 0
        let lp = LinearProgram { a: vec![v(&[1, 1])], b: v(&[-1]), c: v(&[0, 0]) };
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded() {
        // max x s.t. x - y = 1
        let lp = LinearProgram { a: vec![v(&[1, -1])], b: v(&[1]), c: v(&[1, 0]) };
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let lp = LinearProgram {
            a: vec![v(&[1, 1]), v(&[2, 2])],
            b: v(&[1, 2]),
            c: v(&[1, 0]),
        };
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: v(&[1, 0]), value: int(1) });
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example under Dantzig's rule (Beale); Bland's rule must terminate.
        let a = vec![
            vec![frac(1, 4), int(-8), int(-1), int(9), int(1), int(0), int(0)],
            vec![frac(1, 2), int(-12), frac(-1, 2), int(3), int(0), int(1), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
        ];
        let lp = LinearProgram {
            a,
            b: v(&[0, 0, 1]),
            c: vec![frac(3, 4), int(-20), frac(1, 2), int(-6), int(0), int(0), int(0)],
        };
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(5, 4)),
            other => panic!("{other:?}"),
        }
    }
}
