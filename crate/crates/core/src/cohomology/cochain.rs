use crate::algebra::{Coeff, CoeffGroup};

/// A 1-cochain: one coefficient per point (of `X` or of `G`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain1 {
    values: Vec<Coeff>,
}

/// A 2-cochain: an `n × n` table of coefficients, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain2 {
    n: usize,
    values: Vec<Coeff>,
}

/// A 3-cochain, only produced by the degree-2 differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain3 {
    n: usize,
    values: Vec<Coeff>,
}

pub type RackCochain1 = Cochain1;
pub type RackCochain2 = Cochain2;
pub type GroupCochain1 = Cochain1;
pub type GroupCochain2 = Cochain2;

impl Cochain1 {
    pub fn zero(n: usize) -> Self {
        Cochain1 { values: vec![0; n] }
    }

    pub fn from_values(values: Vec<Coeff>) -> Self {
        Cochain1 { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> Coeff {
        self.values[x]
    }

    pub fn set(&mut self, x: usize, v: Coeff) {
        self.values[x] = v;
    }

    pub fn values(&self) -> &[Coeff] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Every 1-cochain on `n` points in mixed-radix order.
    pub fn all(n: usize, a: &CoeffGroup) -> impl Iterator<Item = Cochain1> + '_ {
        let total = (a.size() as u64).checked_pow(n as u32).expect("too many cochains");
        (0..total).map(move |k| Cochain1 {
            values: mixed_radix(k, n, a.size()),
        })
    }
}

impl Cochain2 {
    pub fn zero(n: usize) -> Self {
        Cochain2 {
            n,
            values: vec![0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Coeff) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                values.push(f(x, y));
            }
        }
        Cochain2 { n, values }
    }

    /// Row-major values; panics unless `values.len() == n * n`.
    pub fn from_values(n: usize, values: Vec<Coeff>) -> Self {
        assert_eq!(values.len(), n * n, "2-cochain size");
        Cochain2 { n, values }
    }

    pub fn indicator(n: usize, x: usize, y: usize, value: Coeff) -> Self {
        let mut c = Self::zero(n);
        c.set(x, y, value);
        c
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Coeff {
        self.values[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: Coeff) {
        self.values[x * self.n + y] = v;
    }

    pub fn values(&self) -> &[Coeff] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cochain2, a: &CoeffGroup) -> Cochain2 {
        assert_eq!(self.n, other.n);
        Cochain2 {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&p, &q)| a.add(p, q))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cochain2, a: &CoeffGroup) -> Cochain2 {
        assert_eq!(self.n, other.n);
        Cochain2 {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&p, &q)| a.sub(p, q))
                .collect(),
        }
    }

    pub fn neg(&self, a: &CoeffGroup) -> Cochain2 {
        Cochain2 {
            n: self.n,
            values: self.values.iter().map(|&p| a.neg(p)).collect(),
        }
    }

    /// Every 2-cochain on `n` points in mixed-radix order.
    pub fn all(n: usize, a: &CoeffGroup) -> impl Iterator<Item = Cochain2> + '_ {
        let total = (a.size() as u64)
            .checked_pow((n * n) as u32)
            .expect("too many cochains");
        (0..total).map(move |k| Cochain2 {
            n,
            values: mixed_radix(k, n * n, a.size()),
        })
    }

    pub fn rows(&self) -> Vec<Vec<Coeff>> {
        self.values.chunks(self.n.max(1)).map(<[Coeff]>::to_vec).collect()
    }
}

impl Cochain3 {
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Coeff) -> Self {
        let mut values = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    values.push(f(x, y, z));
                }
            }
        }
        Cochain3 { n, values }
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> Coeff {
        self.values[(x * self.n + y) * self.n + z]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// First triple with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        self.values
            .iter()
            .position(|&v| v != 0)
            .map(|i| (i / (n * n), (i / n) % n, i % n))
    }
}

/// Digits of `k` in base `base`, most significant first.
fn mixed_radix(mut k: u64, len: usize, base: usize) -> Vec<Coeff> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (k % base as u64) as Coeff;
        k /= base as u64;
    }
    out
}
