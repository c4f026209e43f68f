use std::fmt;
use std::str::FromStr;

use crate::error::StructuralError;

/// Finite abelian coefficient group `Z/n_1 ⊕ ... ⊕ Z/n_k`.
///
/// Elements are addressed by a mixed-radix index in `0..size()`; index 0 is
/// the zero element. Addition and negation go through precomputed tables.
#[derive(Clone, PartialEq, Eq)]
pub struct CoeffGroup {
    factors: Vec<u64>,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

/// Index of an element of a [`CoeffGroup`].
pub type Coeff = u32;

impl CoeffGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self, StructuralError> {
        if let Some(&bad) = factors.iter().find(|&&n| n == 0) {
            return Err(StructuralError::BadModulus(bad));
        }
        let size: usize = factors.iter().map(|&n| n as usize).product();
        let mut g = CoeffGroup {
            factors,
            size,
            add: Vec::new(),
            neg: Vec::new(),
        };
        let mut add = vec![0u32; size * size];
        let mut neg = vec![0u32; size];
        for a in 0..size {
            let va = g.components(a as Coeff);
            let na: Vec<i64> = va.iter().map(|x| -x).collect();
            neg[a] = g.from_components(&na);
            for b in 0..size {
                let vb = g.components(b as Coeff);
                let s: Vec<i64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
                add[a * size + b] = g.from_components(&s);
            }
        }
        g.add = add;
        g.neg = neg;
        Ok(g)
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("cyclic modulus must be positive")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn zero(&self) -> Coeff {
        0
    }

    #[inline]
    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Coeff) -> Coeff {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, k: i64, a: Coeff) -> Coeff {
        let v: Vec<i64> = self.components(a).iter().map(|x| x * k).collect();
        self.from_components(&v)
    }

    pub fn sum<I: IntoIterator<Item = Coeff>>(&self, it: I) -> Coeff {
        it.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// Component vector, each entry in `[0, n_i)`.
    pub fn components(&self, a: Coeff) -> Vec<i64> {
        let mut rest = a as u64;
        let mut out = vec![0i64; self.factors.len()];
        for (i, &n) in self.factors.iter().enumerate().rev() {
            out[i] = (rest % n) as i64;
            rest /= n;
        }
        out
    }

    /// Index of the element with the given components (reduced mod each factor).
    pub fn from_components(&self, v: &[i64]) -> Coeff {
        assert_eq!(v.len(), self.factors.len(), "coefficient vector length");
        let mut idx: u64 = 0;
        for (&x, &n) in v.iter().zip(&self.factors) {
            idx = idx * n + x.rem_euclid(n as i64) as u64;
        }
        idx as Coeff
    }

    /// Element with a single nonzero component `value` in factor `i`.
    pub fn unit_in(&self, i: usize, value: i64) -> Coeff {
        let mut v = vec![0i64; self.factors.len()];
        v[i] = value;
        self.from_components(&v)
    }

    pub fn elements(&self) -> impl Iterator<Item = Coeff> {
        0..self.size as Coeff
    }
}

impl fmt::Debug for CoeffGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffGroup({})", self)
    }
}

impl fmt::Display for CoeffGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Parses factor strings such as `"2"`, `"2x3"` or `"4x2x2"`.
impl FromStr for CoeffGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factors = s
            .split(['x', 'X', '*'])
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|e| format!("bad coefficient factor {p:?}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CoeffGroup::new(factors).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_arithmetic() {
        let a = CoeffGroup::cyclic(2);
        assert_eq!(a.size(), 2);
        assert_eq!(a.add(1, 1), 0);
        assert_eq!(a.neg(1), 1);
    }

    #[test]
    fn mixed_radix_roundtrip() {
        let a: CoeffGroup = "2x3".parse().unwrap();
        assert_eq!(a.size(), 6);
        for e in a.elements() {
            assert_eq!(a.from_components(&a.components(e)), e);
            assert_eq!(a.add(e, a.neg(e)), a.zero());
        }
        let x = a.from_components(&[1, 2]);
        assert_eq!(a.components(a.add(x, x)), vec![0, 1]);
    }

    #[test]
    fn trivial_and_bad() {
        let t = CoeffGroup::new(vec![1]).unwrap();
        assert!(t.is_trivial());
        assert!(CoeffGroup::new(vec![0]).is_err());
        assert!("2xq".parse::<CoeffGroup>().is_err());
    }
}
