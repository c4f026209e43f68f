use super::{IntScalar, Matrix};

/// Result of [`smith_decomposition`]: `diagonal = left * input * right`
/// (entrywise modulo `modulus` when one was given).
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub diagonal: Matrix<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
    /// Inverse of `right`, maintained alongside it.
    pub right_inv: Matrix<T>,
    pub rank: usize,
    pub modulus: Option<T>,
}

impl<T: IntScalar> SmithForm<T> {
    /// Nonzero diagonal entries `d_0 | d_1 | ... | d_{rank-1}`.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

/// Working state: the matrix being reduced plus the three transforms.
struct Reducer<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
    modulus: Option<T>,
}

impl<T: IntScalar> Reducer<T> {
    fn norm(&self, x: T) -> T {
        match &self.modulus {
            Some(n) => x.mod_floor(n),
            None => x,
        }
    }

    /// Rows `k` and `i` of `m` become `(p*r_k + q*r_i, r*r_k + s*r_i)`.
    fn mix_rows(&self, m: &mut Matrix<T>, k: usize, i: usize, c: &[T; 4]) {
        for j in 0..m.cols() {
            let rk = m[(k, j)].clone();
            let ri = m[(i, j)].clone();
            let nk = c[0].clone() * rk.clone() + c[1].clone() * ri.clone();
            let ni = c[2].clone() * rk + c[3].clone() * ri;
            m[(k, j)] = self.norm(nk);
            m[(i, j)] = self.norm(ni);
        }
    }

    fn mix_cols(&self, m: &mut Matrix<T>, k: usize, j: usize, c: &[T; 4]) {
        for i in 0..m.rows() {
            let ck = m[(i, k)].clone();
            let cj = m[(i, j)].clone();
            let nk = c[0].clone() * ck.clone() + c[1].clone() * cj.clone();
            let nj = c[2].clone() * ck + c[3].clone() * cj;
            m[(i, k)] = self.norm(nk);
            m[(i, j)] = self.norm(nj);
        }
    }

    /// Unimodular 2x2 coefficients `[s, t, -b/g, a/g]` with `s*a + t*b = g`.
    fn bezout(a: &T, b: &T) -> ([T; 4], [T; 4]) {
        let (g, s, t) = if b.mod_floor(a).is_zero() {
            (a.clone(), T::one(), T::zero())
        } else {
            let eg = a.extended_gcd(b);
            (eg.gcd, eg.x, eg.y)
        };
        let ag = a.div_floor(&g);
        let bg = b.div_floor(&g);
        let fwd = [s.clone(), t.clone(), T::zero() - bg.clone(), ag.clone()];
        let inv = [ag, bg, T::zero() - t, s];
        (fwd, inv)
    }

    fn row_op(&mut self, k: usize, i: usize) {
        let a = self.a[(k, k)].clone();
        let b = self.a[(i, k)].clone();
        let (c, _) = Self::bezout(&a, &b);
        let mut m = std::mem::replace(&mut self.a, Matrix::zeros(0, 0));
        self.mix_rows(&mut m, k, i, &c);
        self.a = m;
        let mut u = std::mem::replace(&mut self.u, Matrix::zeros(0, 0));
        self.mix_rows(&mut u, k, i, &c);
        self.u = u;
    }

    fn col_op(&mut self, k: usize, j: usize) {
        let a = self.a[(k, k)].clone();
        let b = self.a[(k, j)].clone();
        let (c, inv) = Self::bezout(&a, &b);
        // Column form of the same transform: new_k = s*c_k + t*c_j, new_j = -b/g*c_k + a/g*c_j.
        let mut m = std::mem::replace(&mut self.a, Matrix::zeros(0, 0));
        self.mix_cols(&mut m, k, j, &c);
        self.a = m;
        let mut v = std::mem::replace(&mut self.v, Matrix::zeros(0, 0));
        self.mix_cols(&mut v, k, j, &c);
        self.v = v;
        // Rows of V^-1 transform by the inverse: new_k = a/g*r_k + b/g*r_j, new_j = -t*r_k + s*r_j.
        let mut vi = std::mem::replace(&mut self.v_inv, Matrix::zeros(0, 0));
        self.mix_rows(&mut vi, k, j, &inv);
        self.v_inv = vi;
    }

    /// Clears row `k` and column `k` beyond the pivot.
    fn clear_pivot(&mut self, k: usize) {
        loop {
            let mut changed = false;
            for i in (k + 1)..self.a.rows() {
                if !self.a[(i, k)].is_zero() {
                    self.row_op(k, i);
                    changed = true;
                }
            }
            for j in (k + 1)..self.a.cols() {
                if !self.a[(k, j)].is_zero() {
                    self.col_op(k, j);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        // Smallest magnitude keeps intermediate entries small over Z.
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn swap(&mut self, k: usize, i: usize, j: usize) {
        self.a.swap_rows(k, i);
        self.u.swap_rows(k, i);
        self.a.swap_cols(k, j);
        self.v.swap_cols(k, j);
        self.v_inv.swap_rows(k, j);
    }

    fn scale_row(&mut self, k: usize, unit: &T) {
        for j in 0..self.a.cols() {
            let x = self.a[(k, j)].clone() * unit.clone();
            self.a[(k, j)] = self.norm(x);
        }
        for j in 0..self.u.cols() {
            let x = self.u[(k, j)].clone() * unit.clone();
            self.u[(k, j)] = self.norm(x);
        }
    }

    /// Replaces the pivot at `(k, k)` by a canonical associate: `|d|` over Z,
    /// `gcd(d, n)` over Z/n.
    fn normalize_pivot(&mut self, k: usize) {
        let d = self.a[(k, k)].clone();
        match self.modulus.clone() {
            None => {
                if d.is_negative() {
                    self.scale_row(k, &(T::zero() - T::one()));
                }
            }
            Some(n) => {
                let g = d.gcd(&n);
                if d == g || d.is_zero() {
                    return;
                }
                // Find a unit u with u*d = g (mod n); exists since d and g are associates.
                let mut u = T::one();
                while u < n {
                    if u.gcd(&n).is_one() && (u.clone() * d.clone()).mod_floor(&n) == g {
                        self.scale_row(k, &u);
                        return;
                    }
                    u = u + T::one();
                }
                unreachable!("no unit relating {d} and gcd {g} modulo {n}");
            }
        }
    }

    fn divides(&self, a: &T, b: &T) -> bool {
        match &self.modulus {
            None => {
                if a.is_zero() {
                    b.is_zero()
                } else {
                    b.mod_floor(a).is_zero()
                }
            }
            Some(n) => {
                let ga = a.gcd(n);
                let gb = b.gcd(n);
                gb.mod_floor(&ga).is_zero()
            }
        }
    }
}

/// Smith decomposition `D = U * M * V` with `U`, `V` unimodular and
/// `D` diagonal, `d_i | d_{i+1}`.
///
/// With `modulus = Some(n)` every step is carried out in `Z/n`: entries stay
/// in `[0, n)`, and the diagonal entries are the divisors `gcd(d_i, n)`
/// (a zero entry stands for `n`).
pub fn smith_decomposition<T: IntScalar>(m: &Matrix<T>, modulus: Option<T>) -> SmithForm<T> {
    let a = match &modulus {
        Some(n) => m.reduce_mod(n),
        None => m.clone(),
    };
    let rows = a.rows();
    let cols = a.cols();
    let mut r = Reducer {
        a,
        u: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
        modulus,
    };
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = r.find_pivot(k) else {
            break;
        };
        r.swap(k, pi, pj);
        r.clear_pivot(k);
        rank = k + 1;
    }
    for k in 0..rank {
        r.normalize_pivot(k);
    }
    // Divisibility chain.
    loop {
        let mut fixed = true;
        'outer: for i in 0..rank {
            for j in (i + 1)..rank {
                let di = r.a[(i, i)].clone();
                let dj = r.a[(j, j)].clone();
                if !r.divides(&di, &dj) {
                    // col_i += col_j, then re-clear the 2x2 block.
                    let mut a = std::mem::replace(&mut r.a, Matrix::zeros(0, 0));
                    let c = [T::one(), T::one(), T::zero(), T::one()];
                    r.mix_cols(&mut a, i, j, &c);
                    r.a = a;
                    let mut v = std::mem::replace(&mut r.v, Matrix::zeros(0, 0));
                    r.mix_cols(&mut v, i, j, &c);
                    r.v = v;
                    let mut vi = std::mem::replace(&mut r.v_inv, Matrix::zeros(0, 0));
                    let inv = [T::one(), T::zero() - T::one(), T::zero(), T::one()];
                    r.mix_rows(&mut vi, j, i, &inv);
                    r.v_inv = vi;
                    r.clear_pivot(i);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        // A zero may appear on the diagonal over Z/n after a fix; re-compact.
        let nz: Vec<usize> = (0..rows.min(cols))
            .filter(|&i| !r.a[(i, i)].is_zero())
            .collect();
        for (target, &src) in nz.iter().enumerate() {
            if target != src {
                r.swap(target, src, src);
            }
        }
        rank = nz.len();
        for k in 0..rank {
            r.normalize_pivot(k);
        }
        if fixed {
            break;
        }
    }
    SmithForm {
        diagonal: r.a,
        left: r.u,
        right: r.v,
        right_inv: r.v_inv,
        rank,
        modulus: r.modulus,
    }
}

/// Basis of `{x : M x = 0 (mod n)}` in the form `⊕ Z/order_i · generator_i`.
#[derive(Clone, Debug)]
pub struct KernelBasis<T> {
    pub modulus: T,
    /// Generators as vectors in `[0, n)`.
    pub generators: Vec<Vec<T>>,
    /// Additive order of each generator; all greater than one.
    pub orders: Vec<T>,
    /// Rows of `V^-1` with the step `n / gcd(d_i, n)` each coordinate must be
    /// a multiple of, and whether that coordinate belongs to a generator.
    coord_rows: Vec<(Vec<T>, T, bool)>,
}

impl<T: IntScalar> KernelBasis<T> {
    /// Coordinates `c_i` (mod `order_i`) with `x = Σ c_i g_i`. `None` when
    /// `x` is not in the kernel.
    pub fn coordinates(&self, x: &[T]) -> Option<Vec<T>> {
        let mut out = Vec::with_capacity(self.generators.len());
        for (row, step, is_gen) in &self.coord_rows {
            let mut y = T::zero();
            for (a, b) in row.iter().zip(x) {
                y = y + a.clone() * b.clone();
            }
            let y = y.mod_floor(&self.modulus);
            if !y.mod_floor(step).is_zero() {
                return None;
            }
            if *is_gen {
                let order = self.modulus.div_floor(step);
                out.push(y.div_floor(step).mod_floor(&order));
            }
        }
        Some(out)
    }

    /// Total number of kernel elements, as a product of orders.
    pub fn size(&self) -> T {
        self.orders.iter().fold(T::one(), |acc, o| acc * o.clone())
    }
}

/// Kernel of `m` modulo `n`, read off the Smith decomposition over `Z/n`.
pub fn kernel_mod<T: IntScalar>(m: &Matrix<T>, n: T) -> KernelBasis<T> {
    let cols = m.cols();
    let sf = smith_decomposition(m, Some(n.clone()));
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let mut coord_rows = Vec::new();
    for i in 0..cols {
        let d = if i < sf.rank {
            sf.diagonal[(i, i)].clone()
        } else {
            T::zero()
        };
        let order = d.gcd(&n);
        let step = n.div_floor(&order);
        let is_gen = !order.is_one();
        coord_rows.push((sf.right_inv.row(i).to_vec(), step.clone(), is_gen));
        if !is_gen {
            continue;
        }
        let g: Vec<T> = sf
            .right
            .column(i)
            .into_iter()
            .map(|x| (x * step.clone()).mod_floor(&n))
            .collect();
        generators.push(g);
        orders.push(order);
    }
    KernelBasis {
        modulus: n,
        generators,
        orders,
        coord_rows,
    }
}

/// Invariant factors `d_1 | d_2 | ...` (all > 1) of `⊕ Z/orders_i`.
pub fn canonical_invariant_factors(orders: &[u64]) -> Vec<u64> {
    let k = orders.len();
    if k == 0 {
        return Vec::new();
    }
    let mut m = Matrix::<i128>::zeros(k, k);
    for (i, &o) in orders.iter().enumerate() {
        m[(i, i)] = o as i128;
    }
    let sf = smith_decomposition(&m, None);
    sf.invariant_factors()
        .into_iter()
        .filter(|&d| d != 1)
        .map(|d| d as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn check_decomposition(m: &Matrix<i64>, modulus: Option<i64>) -> SmithForm<i64> {
        let sf = smith_decomposition(m, modulus);
        let mut prod = sf.left.mul(m).mul(&sf.right);
        let mut vv = sf.right.mul(&sf.right_inv);
        if let Some(n) = modulus {
            prod = prod.reduce_mod(&n);
            vv = vv.reduce_mod(&n);
        }
        assert_eq!(prod, sf.diagonal, "D != U M V for {m:?}");
        assert!(sf.diagonal.is_diagonal());
        assert_eq!(vv, Matrix::identity(m.cols()));
        let f = sf.invariant_factors();
        for w in f.windows(2) {
            match modulus {
                None => assert_eq!(w[1] % w[0], 0),
                Some(n) => assert_eq!(w[1].gcd(&n) % w[0].gcd(&n), 0),
            }
        }
        sf
    }

    #[test]
    fn identity_is_its_own_form() {
        let sf = check_decomposition(&Matrix::identity(3), None);
        assert_eq!(sf.invariant_factors(), vec![1, 1, 1]);
    }

    #[test]
    fn two_by_two_example() {
        // Hand reduction: gcd of entries is 2, det = -8, so diag(2, 4).
        let m = Matrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let sf = check_decomposition(&m, None);
        assert_eq!(sf.invariant_factors(), vec![2, 4]);
    }

    #[test]
    fn zero_matrix() {
        let sf = check_decomposition(&Matrix::zeros(2, 3), None);
        assert_eq!(sf.rank, 0);
        assert!(sf.invariant_factors().is_empty());
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = Matrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let sf = check_decomposition(&m, None);
        assert_eq!(sf.invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn modular_decomposition() {
        let m = Matrix::from_rows(vec![vec![2, 3, 1], vec![4, 0, 5], vec![1, 1, 1]]);
        for n in [2, 3, 4, 6, 12] {
            check_decomposition(&m, Some(n));
        }
    }

    #[test]
    fn kernel_mod_two() {
        // x0 + x1 = 0 mod 2 -> kernel {00, 11} plus free x2.
        let m = Matrix::from_rows(vec![vec![1, 1, 0]]);
        let k = kernel_mod(&m, 2);
        assert_eq!(k.size(), 4);
        for g in &k.generators {
            assert_eq!((g[0] + g[1]) % 2, 0);
        }
        assert_eq!(k.coordinates(&[1, 0, 0]), None);
        assert!(k.coordinates(&[1, 1, 1]).is_some());
    }

    #[test]
    fn kernel_mod_four_has_mixed_orders() {
        // 2x = 0 mod 4 -> {0, 2}
        let m = Matrix::from_rows(vec![vec![2]]);
        let k = kernel_mod(&m, 4);
        assert_eq!(k.orders, vec![2]);
        assert_eq!(k.generators, vec![vec![2]]);
    }

    #[test]
    fn invariant_factors_of_orders() {
        assert_eq!(canonical_invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(canonical_invariant_factors(&[2, 2, 4]), vec![2, 2, 4]);
        assert_eq!(canonical_invariant_factors(&[4, 6]), vec![2, 12]);
        assert!(canonical_invariant_factors(&[1]).is_empty());
    }
}
