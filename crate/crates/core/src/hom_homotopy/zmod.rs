//! Lattices in `Z^n` containing `eZ^n`, stored as Howell-style echelon
//! forms over `Z/e`, and Smith forms of their quotients.

use alloc::vec;
use alloc::vec::Vec;

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b) ≥ 0`; `(a, 1, 0)` when `a | b` and `a > 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if a > 0 && b % a == 0 {
        return (a, 1, 0);
    }
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a.abs(), b.abs()).0
}

/// A unit `u` mod `e` with `u·x ≡ gcd(x, e)`.
fn normalizing_unit(x: i64, e: i64) -> i64 {
    let h = gcd(x, e);
    if h == 0 || e == 1 {
        return 1;
    }
    let (xr, er) = (x / h, e / h);
    let (_, s, _) = ext_gcd(xr.rem_euclid(er), er);
    let u0 = s.rem_euclid(er.max(1));
    (0..h).map(|k| u0 + k * er).find(|&u| gcd(u, e) == 1).expect("a unit lifts")
}

/// A lattice `L ⊇ eZ^n` in echelon form: `rows[c]` has zeros before
/// column `c` and pivot `h_c | e` at `c`; absent rows stand for `e·unit_c`.
/// Every row `r` satisfies `(e/h_c)·r ∈ span(rows after c)`, which makes
/// [`Echelon::reduce`] canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    e: i64,
    n: usize,
    rows: Vec<Option<Vec<i64>>>,
}

impl Echelon {
    pub fn new(n: usize, e: i64) -> Self {
        assert!(e >= 1);
        Echelon { e, n, rows: vec![None; n] }
    }

    pub fn from_generators<I: IntoIterator<Item = Vec<i64>>>(n: usize, e: i64, gens: I) -> Self {
        let mut l = Self::new(n, e);
        for g in gens {
            l.insert(g);
        }
        l
    }

    pub fn modulus(&self) -> i64 {
        self.e
    }

    pub fn width(&self) -> usize {
        self.n
    }

    /// Pivot of column `c` (`e` when the row is absent).
    pub fn pivot(&self, c: usize) -> i64 {
        self.rows[c].as_ref().map_or(self.e, |r| r[c])
    }

    pub fn row(&self, c: usize) -> Option<&[i64]> {
        self.rows[c].as_deref()
    }

    /// Columns with an explicit row.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&c| self.rows[c].is_some()).collect()
    }

    /// `|L / eZ^n| = ∏ e / h_c`.
    pub fn index_in_ambient(&self) -> u128 {
        (0..self.n).map(|c| (self.e / self.pivot(c)) as u128).product()
    }

    pub fn insert(&mut self, v: Vec<i64>) {
        let e = self.e;
        let mut stack = vec![v];
        while let Some(mut v) = stack.pop() {
            for x in v.iter_mut() {
                *x = x.rem_euclid(e);
            }
            let mut c = 0;
            while c < self.n {
                if v[c] == 0 {
                    c += 1;
                    continue;
                }
                match self.rows[c].take() {
                    None => {
                        let u = normalizing_unit(v[c], e);
                        scale(&mut v[c..], u, e);
                        let h = v[c];
                        let mut extra = v.clone();
                        scale(&mut extra[c..], e / h, e);
                        self.rows[c] = Some(v);
                        stack.push(extra);
                        break;
                    }
                    Some(r) => {
                        let h = r[c];
                        if v[c] % h == 0 {
                            let k = v[c] / h;
                            axpy(&mut v[c..], -k, &r[c..], e);
                            self.rows[c] = Some(r);
                            continue;
                        }
                        let (g, s, t) = ext_gcd(h, v[c]);
                        let mut nr: Vec<i64> = (0..self.n).map(|i| if i < c { 0 } else { (s * r[i] + t * v[i]).rem_euclid(e) }).collect();
                        // g | h | e already, so the pivot needs no unit fix
                        debug_assert_eq!(nr[c], g);
                        let mut residual = r.clone();
                        axpy(&mut residual[c..], -(h / g), &nr[c..], e);
                        let k = v[c] / g;
                        axpy(&mut v[c..], -k, &nr[c..], e);
                        let mut extra = nr.clone();
                        scale(&mut extra[c..], e / g, e);
                        nr[c] = g;
                        self.rows[c] = Some(nr);
                        stack.push(residual);
                        stack.push(extra);
                    }
                }
            }
        }
    }

    /// The canonical, lexicographically least representative of `v + L` with entries in `[0, e)`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let e = self.e;
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        for c in 0..self.n {
            if let Some(r) = &self.rows[c] {
                let k = v[c] / r[c];
                if k != 0 {
                    axpy(&mut v[c..], -k, &r[c..], e);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &Echelon) -> bool {
        other.rows.iter().flatten().all(|r| self.contains(r))
    }

    /// Coordinates of `v ∈ L` with respect to the explicit rows: `λ_c ∈ [0, e/h_c)`.
    fn coordinates(&self, v: &[i64], cols: &[usize]) -> Vec<i64> {
        let e = self.e;
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        let mut out = Vec::with_capacity(cols.len());
        for &c in cols {
            let r = self.rows[c].as_ref().expect("explicit row");
            let k = v[c] / r[c];
            debug_assert_eq!(v[c] % r[c], 0, "vector is not in the lattice");
            axpy(&mut v[c..], -k, &r[c..], e);
            out.push(k);
        }
        debug_assert!(v.iter().all(|&x| x == 0), "vector is not in the lattice");
        out
    }

    /// `{x : w·x ≡ 0 (mod e) for every constraint w}`.
    pub fn annihilator<I: IntoIterator<Item = Vec<i64>>>(n: usize, e: i64, constraints: I) -> Echelon {
        let w = Self::from_generators(n, e, constraints);
        let cols = w.pivot_columns();
        let k = cols.len();
        let mut aug = Echelon::new(k + n, e);
        for i in 0..n {
            let mut g = vec![0; k + n];
            for (j, &c) in cols.iter().enumerate() {
                g[j] = w.rows[c].as_ref().unwrap()[i];
            }
            g[k + i] = 1;
            aug.insert(g);
        }
        Echelon::from_generators(n, e, (k..k + n).filter_map(|c| aug.rows[c].as_ref().map(|r| r[k..].to_vec())))
    }
}

fn scale(v: &mut [i64], k: i64, e: i64) {
    for x in v.iter_mut() {
        *x = (*x * k).rem_euclid(e);
    }
}

fn axpy(v: &mut [i64], k: i64, r: &[i64], e: i64) {
    let k = k.rem_euclid(e);
    if k == 0 {
        return;
    }
    for (x, y) in v.iter_mut().zip(r) {
        if *y != 0 {
            *x = (*x + k * y) % e;
        }
    }
}

/// Solves `Σ h_i · cols_i ≡ v (mod L)`; `L` is given by its echelon form.
/// Returns the coefficients `h`, or `None` if `v` is not in the span.
pub struct Solver {
    width: usize,
    unknowns: usize,
    aug: Echelon,
}

impl Solver {
    pub fn new(cols: &[Vec<i64>], relations: &Echelon) -> Self {
        let (width, unknowns, e) = (relations.n, cols.len(), relations.e);
        let mut aug = Echelon::new(width + unknowns, e);
        for (i, col) in cols.iter().enumerate() {
            let mut g = col.clone();
            g.resize(width + unknowns, 0);
            g[width + i] = 1;
            aug.insert(g);
        }
        for r in relations.rows.iter().flatten() {
            let mut g = r.clone();
            g.resize(width + unknowns, 0);
            aug.insert(g);
        }
        Solver { width, unknowns, aug }
    }

    pub fn solve(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut g = v.to_vec();
        g.resize(self.width + self.unknowns, 0);
        let r = self.aug.reduce(&g);
        if r[..self.width].iter().any(|&x| x != 0) {
            return None;
        }
        let e = self.aug.e;
        Some(r[self.width..].iter().map(|&x| (-x).rem_euclid(e)).collect())
    }
}

/// The finite abelian group `S / T` for lattices `T ⊆ S`, in Smith form.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    pub s: Echelon,
    pub t: Echelon,
    cols: Vec<usize>,
    /// Diagonal of the Smith form, one entry per explicit row of `S`.
    diag: Vec<i64>,
    /// `λ ↦ λ·q` sends row coordinates to Smith coordinates.
    q: Vec<Vec<i64>>,
    qinv: Vec<Vec<i64>>,
    /// Smith coordinates with nontrivial order.
    factors: Vec<usize>,
}

impl LatticeQuotient {
    pub fn new(s: Echelon, t: Echelon) -> Self {
        debug_assert!(s.contains_lattice(&t));
        let e = s.e;
        let cols = s.pivot_columns();
        let k = cols.len();
        let mut rel: Vec<Vec<i64>> = Vec::new();
        for (j, &c) in cols.iter().enumerate() {
            let m = e / s.pivot(c);
            let mut v = s.rows[c].clone().unwrap();
            scale(&mut v, m, e);
            let mut r: Vec<i64> = s.coordinates(&v, &cols).iter().map(|x| (-x).rem_euclid(e)).collect();
            r[j] = (r[j] + m).rem_euclid(e);
            rel.push(r);
        }
        for r in t.rows.iter().flatten() {
            rel.push(s.coordinates(r, &cols));
        }
        let (diag, q, qinv) = smith_mod(rel, k, e);
        let factors = (0..k).filter(|&j| diag[j] != 1).collect();
        LatticeQuotient { s, t, cols, diag, q, qinv, factors }
    }

    pub fn invariant_factors(&self) -> Vec<i64> {
        self.factors.iter().map(|&j| self.diag[j]).collect()
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors().iter().map(|&d| d as u128).product()
    }

    /// Smith coordinates of `v ∈ S`, reduced into `[0, d_j)`.
    pub fn class_of(&self, v: &[i64]) -> Vec<i64> {
        let e = self.s.e;
        let lambda = self.s.coordinates(v, &self.cols);
        self.factors
            .iter()
            .map(|&j| {
                let mu = lambda.iter().zip(&self.q).fold(0i64, |acc, (l, row)| (acc + l * row[j]) % e);
                mu.rem_euclid(self.diag[j])
            })
            .collect()
    }

    /// The canonical (reduced modulo `T`) ambient vector of a class.
    pub fn element(&self, class: &[i64]) -> Vec<i64> {
        let e = self.s.e;
        let mut lambda = vec![0i64; self.cols.len()];
        for (&j, &a) in self.factors.iter().zip(class) {
            for (l, x) in lambda.iter_mut().zip(&self.qinv[j]) {
                *l = (*l + a * x) % e;
            }
        }
        let mut v = vec![0i64; self.s.n];
        for (l, &c) in lambda.iter().zip(&self.cols) {
            axpy(&mut v, *l, self.s.rows[c].as_ref().unwrap(), e);
        }
        self.t.reduce(&v)
    }
}

/// Smith form of the row lattice `rows + e·I` over `Z/e`. Returns the
/// diagonal (entries dividing `e`, in divisibility order) and the column
/// transform `Q` with its inverse.
#[allow(clippy::type_complexity)]
fn smith_mod(mut a: Vec<Vec<i64>>, k: usize, e: i64) -> (Vec<i64>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut q: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    let mut qinv = q.clone();
    let mut diag = vec![e; k];
    let m = a.len();
    for t in 0..k {
        // choose the entry with the smallest gcd with e
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let g = gcd(x, e);
                    if best.is_none_or(|(b, _, _)| g < b) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, i0, j0)) = best else {
            break;
        };
        a.swap(t, i0);
        swap_cols(&mut a, &mut q, &mut qinv, t, j0);
        loop {
            let mut clean = false;
            while !clean {
                clean = true;
                for i in t + 1..m {
                    if a[i][t] != 0 {
                        clean = false;
                        row_eliminate(&mut a, t, i, e);
                    }
                }
                for j in t + 1..k {
                    if a[t][j] != 0 {
                        clean = false;
                        col_eliminate(&mut a, &mut q, &mut qinv, t, j, e);
                    }
                }
            }
            let u = normalizing_unit(a[t][t], e);
            scale(&mut a[t], u, e);
            let p = a[t][t];
            // divisibility: pull an offending row into row t, which shrinks the pivot
            match (t + 1..m).find(|&i| a[i][t + 1..].iter().any(|&x| x % p != 0)) {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&src) {
                        *x = (*x + y) % e;
                    }
                }
                None => {
                    diag[t] = p;
                    break;
                }
            }
        }
    }
    (diag, q, qinv)
}

fn swap_cols(a: &mut [Vec<i64>], q: &mut [Vec<i64>], qinv: &mut [Vec<i64>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut().chain(q.iter_mut()) {
        row.swap(i, j);
    }
    qinv.swap(i, j);
}

fn row_eliminate(a: &mut [Vec<i64>], t: usize, i: usize, e: i64) {
    let (x, y) = (a[t][t], a[i][t]);
    if x != 0 && y % x == 0 {
        let k = y / x;
        let src = a[t].clone();
        axpy(&mut a[i], -k, &src, e);
        return;
    }
    let (g, s, u) = ext_gcd(x, y);
    let (rt, ri) = (a[t].clone(), a[i].clone());
    for c in 0..rt.len() {
        a[t][c] = (s * rt[c] + u * ri[c]).rem_euclid(e);
        a[i][c] = (-(y / g) * rt[c] + (x / g) * ri[c]).rem_euclid(e);
    }
}

fn col_eliminate(a: &mut [Vec<i64>], q: &mut [Vec<i64>], qinv: &mut [Vec<i64>], t: usize, j: usize, e: i64) {
    let (x, y) = (a[t][t], a[t][j]);
    // column transform M on columns (t, j); Q ← Q·M, Q⁻¹ ← M⁻¹·Q⁻¹
    let (m_tt, m_jt, m_tj, m_jj) = if x != 0 && y % x == 0 {
        (1, 0, -(y / x), 1)
    } else {
        let (g, s, u) = ext_gcd(x, y);
        (s, u, -(y / g), x / g)
    };
    for row in a.iter_mut().chain(q.iter_mut()) {
        let (ct, cj) = (row[t], row[j]);
        row[t] = (ct * m_tt + cj * m_jt).rem_euclid(e);
        row[j] = (ct * m_tj + cj * m_jj).rem_euclid(e);
    }
    // M = [[m_tt, m_tj], [m_jt, m_jj]] has determinant 1, so M⁻¹ = [[m_jj, −m_tj], [−m_jt, m_tt]]
    let (rt, rj) = (qinv[t].clone(), qinv[j].clone());
    for c in 0..rt.len() {
        qinv[t][c] = (m_jj * rt[c] - m_tj * rj[c]).rem_euclid(e);
        qinv[j][c] = (-m_jt * rt[c] + m_tt * rj[c]).rem_euclid(e);
    }
}
