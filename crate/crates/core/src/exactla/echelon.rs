use super::scalar::Field;

/// Incrementally maintained reduced row echelon basis.
///
/// Every stored row has a leading one at its pivot and zeros at the pivots of
/// all other rows, so reducing a vector is a single pass over the rows in any
/// order.
#[derive(Debug, Clone)]
pub struct RowEchelon<F: Field> {
    width: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(width: usize) -> Self {
        RowEchelon { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Residual of `v` after eliminating all stored pivots.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        debug_assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].negated();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    x.add_product(&c, r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v.to_vec()).iter().all(F::is_zero)
    }

    /// Adds `v` to the span. Returns the new pivot if the rank grew.
    pub fn insert(&mut self, v: Vec<F>) -> Option<usize> {
        assert_eq!(v.len(), self.width, "echelon row width mismatch");
        if self.is_full() {
            return None;
        }
        let mut v = self.reduce(v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].recip().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = x.times(&inv);
                }
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].negated();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    x.add_product(&c, r);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        Some(p)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Rows ordered by pivot column, which is the canonical RREF.
    pub fn into_sorted(self) -> (Vec<Vec<F>>, Vec<usize>) {
        let mut pairs: Vec<(usize, Vec<F>)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        pairs.into_iter().map(|(p, r)| (r, p)).unzip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    #[test]
    fn canonical_regardless_of_order() {
        let vs = [vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]];
        let to_q = |v: &Vec<i64>| v.iter().map(|&x| Q::int(x)).collect::<Vec<_>>();
        let mut a = RowEchelon::new(3);
        let mut b = RowEchelon::new(3);
        for v in &vs {
            a.insert(to_q(v));
        }
        for v in vs.iter().rev() {
            b.insert(to_q(v));
        }
        assert_eq!(a.rank(), 2);
        assert_eq!(a.into_sorted(), b.into_sorted());
    }
}
