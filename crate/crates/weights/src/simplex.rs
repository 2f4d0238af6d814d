//! Two-phase tableau simplex over exact rationals with Bland's rule.
//!
//! Solves min c.x subject to a_i.x >= b_i and x >= 0.

use domination::{qi, Q};
use num_traits::{Signed, Zero};

use crate::{LpError, Row};

struct Tableau {
    t: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.t[r][col].clone();
        for v in self.t[r].iter_mut() {
            *v /= p.clone();
        }
        self.rhs[r] /= p;
        for i in 0..self.t.len() {
            if i == r || self.t[i][col].is_zero() {
                continue;
            }
            let f = self.t[i][col].clone();
            for j in 0..self.t[i].len() {
                if !self.t[r][j].is_zero() {
                    let d = f.clone() * self.t[r][j].clone();
                    self.t[i][j] -= d;
                }
            }
            let d = f * self.rhs[r].clone();
            self.rhs[i] -= d;
        }
        self.basis[r] = col;
    }

    /// Runs Bland's rule on columns `< ncols` for cost vector `c`.
    fn run(&mut self, c: &[Q], ncols: usize) -> Result<(), LpError> {
        loop {
            let entering = (0..ncols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let red = self.basis.iter().enumerate().fold(c[j].clone(), |a, (i, &b)| {
                    if self.t[i][j].is_zero() {
                        a
                    } else {
                        a - c[b].clone() * self.t[i][j].clone()
                    }
                });
                red.is_negative()
            });
            let Some(col) = entering else { return Ok(()) };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][col].is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / self.t[i][col].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave.ok_or(LpError::Unbounded)?;
            self.pivot(r, col);
        }
    }
}

/// Returns the optimal value and an optimal point.
pub(crate) fn solve(rows: &[Row], c: &[Q; 3]) -> Result<(Q, [Q; 3]), LpError> {
    let m = rows.len();
    // columns: x (3), surplus (m), artificials (one per row needing it)
    let art_rows: Vec<usize> = (0..m).filter(|&i| rows[i].b.is_positive()).collect();
    let nx = 3 + m;
    let ncol = nx + art_rows.len();
    let mut tab = Tableau { t: Vec::with_capacity(m), rhs: Vec::with_capacity(m), basis: Vec::with_capacity(m) };
    for (i, r) in rows.iter().enumerate() {
        let mut line = vec![qi(0); ncol];
        if r.b.is_positive() {
            line[..3].clone_from_slice(&r.a);
            line[3 + i] = qi(-1);
            let k = art_rows.iter().position(|&x| x == i).unwrap();
            line[nx + k] = qi(1);
            tab.basis.push(nx + k);
            tab.rhs.push(r.b.clone());
        } else {
            for (l, a) in line.iter_mut().zip(&r.a) {
                *l = -a.clone();
            }
            line[3 + i] = qi(1);
            tab.basis.push(3 + i);
            tab.rhs.push(-r.b.clone());
        }
        tab.t.push(line);
    }

    if !art_rows.is_empty() {
        let mut c1 = vec![qi(0); ncol];
        for v in c1[nx..].iter_mut() {
            *v = qi(1);
        }
        tab.run(&c1, ncol)?;
        let infeas = tab.basis.iter().zip(&tab.rhs).any(|(&b, v)| b >= nx && !v.is_zero());
        if infeas {
            return Err(LpError::Infeasible);
        }
        // drive zero-level artificials out of the basis
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= nx {
                match (0..nx).find(|&j| !tab.t[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.t.remove(i);
                        tab.rhs.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut c2 = vec![qi(0); ncol];
    c2[..3].clone_from_slice(c);
    tab.run(&c2, nx)?;
    let mut x = [qi(0), qi(0), qi(0)];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < 3 {
            x[b] = tab.rhs[i].clone();
        }
    }
    let v = (0..3).fold(qi(0), |a, i| a + c[i].clone() * x[i].clone());
    Ok((v, x))
}
