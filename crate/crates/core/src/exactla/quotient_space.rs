use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// The quotient `F^n / U` of a coordinate space by a subspace, with coordinates taken
/// on the standard basis vectors that are not pivots of `U`'s echelon basis.
#[derive(Clone, Debug)]
pub struct QuotientSpace<F: Field> {
    ambient: usize,
    reduced: Matrix<F>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl<F: Field> QuotientSpace<F> {
    /// `spanning` holds the generators of `U` as its columns.
    pub fn new(spanning: &Matrix<F>) -> Self {
        let ambient = spanning.rows();
        let (r, pivots) = spanning.transpose().rref();
        let mut reduced = Matrix::zeros(r.field().clone(), pivots.len(), ambient);
        for i in 0..pivots.len() {
            for j in 0..ambient {
                reduced.set(i, j, r.get(i, j).clone());
            }
        }
        let free = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        QuotientSpace { ambient, reduced, pivots, free }
    }

    /// The whole space modulo zero.
    pub fn full(field: F, ambient: usize) -> Self {
        Self::new(&Matrix::zeros(field, ambient, 0))
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn sub_dim(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.reduced.field();
        let mut v = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            if f.is_zero(&v[c]) {
                continue;
            }
            let factor = v[c].clone();
            for (j, x) in v.iter_mut().enumerate() {
                *x = f.sub(x, &f.mul(&factor, self.reduced.get(i, j)));
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.reduced.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.reduce(v);
        self.free.iter().map(|&c| r[c].clone()).collect()
    }

    pub fn lift(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.reduced.field();
        let mut v = vec![f.zero(); self.ambient];
        for (k, &c) in self.free.iter().enumerate() {
            v[c] = coords[k].clone();
        }
        v
    }

    /// Matrix of the map induced by `map` from this quotient to `target`. Fails if
    /// `map` does not send the subspace into the target's subspace.
    pub fn induced(&self, map: &Matrix<F>, target: &QuotientSpace<F>) -> Result<Matrix<F>> {
        if map.cols() != self.ambient || map.rows() != target.ambient {
            return Err(Error::DimensionMismatch(format!(
                "induced map {}x{} between spaces of dimension {} and {}",
                map.rows(),
                map.cols(),
                self.ambient,
                target.ambient
            )));
        }
        for i in 0..self.reduced.rows() {
            if !target.contains(&map.apply(self.reduced.row(i))?) {
                return Err(Error::Inconsistent("map does not preserve the quotient subspaces".into()));
            }
        }
        let f = map.field().clone();
        let columns: Vec<Vec<F::Elem>> = self
            .free
            .iter()
            .map(|&c| {
                let mut e = vec![f.zero(); self.ambient];
                e[c] = f.one();
                map.apply(&e).map(|img| target.project(&img))
            })
            .collect::<Result<_>>()?;
        Matrix::from_columns(f, target.dim(), &columns)
    }
}
