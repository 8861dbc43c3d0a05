use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::valcore::{Poly, Scalar};

/// Square matrix over exact scalars, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("empty matrix".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("row {i} has {} entries, expected {n}", r.len())));
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.entries[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter()
    }

    pub fn diag(&self) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Scalar {
        self.diag().into_iter().sum()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a * o.get(k, j);
                    let cur = &out.entries[i * n + j] + &t;
                    out.entries[i * n + j] = cur;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self + λ I`
    pub fn shift(&self, lambda: &Scalar) -> Matrix {
        self.add(&Matrix::diagonal(&vec![lambda.clone(); self.n]))
    }

    /// `[[a, c], [0, b]]`
    pub fn block_upper(a: &Matrix, c: &[Vec<Scalar>], b: &Matrix) -> Result<Matrix> {
        let (n1, n2) = (a.n, b.n);
        if c.len() != n1 || c.iter().any(|r| r.len() != n2) {
            return Err(Error::ShapeMismatch(format!("coupling block must be {n1}x{n2}")));
        }
        let mut m = Matrix::zeros(n1 + n2);
        for i in 0..n1 {
            for j in 0..n1 {
                m.set(i, j, a.get(i, j).clone());
            }
            for j in 0..n2 {
                m.set(i, n1 + j, c[i][j].clone());
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                m.set(n1 + i, n1 + j, b.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// `det(X I - G)` by Faddeev–LeVerrier; needs division by `1..n`, fine in characteristic 0.
    pub fn charpoly(&self) -> Poly {
        let n = self.n;
        let mut c = vec![Scalar::zero(); n + 1];
        c[n] = Scalar::one();
        let mut m = Matrix::zeros(n);
        for k in 1..=n {
            m = self.mul(&m).shift(&c[n - k + 1]);
            let tr = self.mul(&m).trace();
            c[n - k] = -tr.div_rational(&BigRational::from_integer((k as i64).into()));
        }
        Poly::new(c)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
