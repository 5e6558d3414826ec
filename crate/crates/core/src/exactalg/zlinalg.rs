use super::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row Hermite normal form of an integer matrix, together with the
/// expression of every HNF row in terms of the input rows.
#[derive(Clone, Debug)]
pub struct IntHnf {
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<BigInt>>,
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

impl IntHnf {
    pub fn new(input: &[Vec<BigInt>], ncols: usize) -> Self {
        let n = input.len();
        let mut work: Vec<(Vec<BigInt>, Vec<BigInt>)> = input
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut u = vec![BigInt::zero(); n];
                u[i] = BigInt::one();
                (r.clone(), u)
            })
            .collect();
        let mut rank = 0;
        let mut pivots = Vec::new();
        for col in 0..ncols {
            loop {
                // smallest nonzero entry in this column among unused rows
                let Some(best) = (rank..work.len())
                    .filter(|&i| !work[i].0[col].is_zero())
                    .min_by(|&a, &b| work[a].0[col].abs().cmp(&work[b].0[col].abs()))
                else {
                    break;
                };
                work.swap(rank, best);
                let (prow, pu) = work[rank].clone();
                let mut done = true;
                for w in work.iter_mut().skip(rank + 1) {
                    if w.0[col].is_zero() {
                        continue;
                    }
                    let q = w.0[col].div_floor(&prow[col]);
                    axpy(&mut w.0, &q, &prow);
                    axpy(&mut w.1, &q, &pu);
                    if !w.0[col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if rank < work.len() && !work[rank].0[col].is_zero() {
                if work[rank].0[col].is_negative() {
                    let w = &mut work[rank];
                    for x in w.0.iter_mut().chain(w.1.iter_mut()) {
                        *x = -&*x;
                    }
                }
                let (prow, pu) = work[rank].clone();
                for w in work.iter_mut().take(rank) {
                    let q = w.0[col].div_floor(&prow[col]);
                    axpy(&mut w.0, &q, &prow);
                    axpy(&mut w.1, &q, &pu);
                }
                pivots.push(col);
                rank += 1;
            }
        }
        work.truncate(rank);
        let (rows, transform) = work.into_iter().unzip();
        IntHnf {
            ncols,
            rows,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Integer coefficients `c` with `sum c_i input_i = v`, if any.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.transform.first().map_or(0, |t| t.len());
        let mut v = v.to_vec();
        let mut combo = vec![BigInt::zero(); n];
        let mut next = 0;
        for (ri, &pc) in self.pivots.iter().enumerate() {
            if v[next..pc].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = v[pc].div_rem(&self.rows[ri][pc]);
            if !r.is_zero() {
                return None;
            }
            axpy(&mut v, &q, &self.rows[ri]);
            axpy(&mut combo, &-&q, &self.transform[ri]);
            next = pc + 1;
        }
        if v[next.min(self.ncols)..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(combo)
    }

    /// Rational coefficients of `v` on the HNF rows and the matching
    /// combination of the input rows, if `v` lies in the rational span.
    pub fn solve_rational(&self, v: &[BigInt]) -> Option<(Vec<Rat>, Vec<Rat>)> {
        let n = self.transform.first().map_or(0, |t| t.len());
        let mut v: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let mut coeffs = Vec::with_capacity(self.rank());
        let mut combo = vec![Rat::zero(); n];
        for (ri, &pc) in self.pivots.iter().enumerate() {
            let c = &v[pc] / Rat::from_integer(self.rows[ri][pc].clone());
            if !c.is_zero() {
                for (x, r) in v.iter_mut().zip(&self.rows[ri]) {
                    *x -= &c * Rat::from_integer(r.clone());
                }
                for (x, t) in combo.iter_mut().zip(&self.transform[ri]) {
                    *x += &c * Rat::from_integer(t.clone());
                }
            }
            coeffs.push(c);
        }
        v.iter().all(|x| x.is_zero()).then_some((coeffs, combo))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    /// Index of the lattice in ℤ^n when it has full rank.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.ncols).then(|| {
            self.pivots
                .iter()
                .enumerate()
                .fold(BigInt::one(), |acc, (i, &c)| acc * &self.rows[i][c])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_solves_combinations() {
        let rows = vec![v(&[2, 4, 6]), v(&[0, 3, 1]), v(&[4, 5, 13])];
        let h = IntHnf::new(&rows, 3);
        let target = v(&[6, 12, 20]);
        let c = h.solve(&target).expect("in lattice");
        let mut sum = v(&[0, 0, 0]);
        for (ci, r) in c.iter().zip(&rows) {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += ci * x;
            }
        }
        assert_eq!(sum, target);
        assert!(!h.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn index_of_sublattice() {
        let h = IntHnf::new(&[v(&[2, 0]), v(&[1, 3])], 2);
        assert_eq!(h.index(), Some(BigInt::from(6)));
    }
}
