//! Exact linear algebra over the rationals.
//!
//! Dense matrices of `BigRational`, reduced row echelon form, null spaces,
//! linear solves, and univariate polynomials with enough factoring support
//! to split endomorphisms of small modules.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The base field.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The fraction `n/d`; `d` must be nonzero.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (optional leading sign).
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|c| fmt_q(self.get(r, c))).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn scalar(n: usize, c: Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// A matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Q> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut s = Q::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        s += a * &v[c];
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> Q {
        assert!(self.is_square());
        (0..self.rows).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn pow(&self, n: usize) -> Matrix {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r: usize, c: usize, nr: usize, nc: usize) -> Matrix {
        let mut m = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m.set(i, j, self.get(r + i, c + j).clone());
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zeros(self.rows + other.rows, self.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, other);
        m
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if !rv.is_zero() {
                        let v = m.get(i, j) - &f * rv;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, as a matrix whose columns are independent.
    pub fn column_space(&self) -> Matrix {
        let (_, pivots) = self.rref();
        let cols: Vec<Vec<Q>> = pivots.iter().map(|&c| self.col(c)).collect();
        Matrix::from_cols(self.rows, &cols)
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vec<Q>>> = (0..b.cols).map(|c| self.solve(&b.col(c))).collect();
        cols.map(|cs| Matrix::from_cols(self.cols, &cs))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Q::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pv = m.get(c, c).clone();
            det *= &pv;
            for i in c + 1..n {
                let f = m.get(i, c) / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m).add(&Matrix::scalar(n, coeffs[n - k + 1].clone()));
            let c = -self.mul(&m).trace() / q(k as i64);
            coeffs[n - k] = c;
        }
        Poly::new(coeffs)
    }

    /// Evaluates a polynomial at this square matrix.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::scalar(n, c.clone()));
        }
        acc
    }
}

/// Dense univariate polynomial, coefficients from the constant term upward.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Q::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(vec![]);
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::new(vec![]), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        let dl = d.lead();
        for k in (0..quo.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            quo[k] = c;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Splits a monic squarefree polynomial into two coprime monic factors of
    /// positive degree, if it is reducible over the rationals.
    ///
    /// Candidate factors come from subsets of numerically computed roots of an
    /// associated monic integer polynomial; every candidate is confirmed by
    /// exact division, so a returned split is always correct.
    pub fn split_rational(&self) -> Option<(Poly, Poly)> {
        let n = self.degree()?;
        if n < 2 {
            return None;
        }
        let p = self.monic();
        // rational root check first: cheap and covers the common case
        if let Some(r) = p.rational_root() {
            let f = Poly::new(vec![-r, Q::one()]);
            let (g, rem) = p.divrem(&f);
            debug_assert!(rem.is_zero());
            return Some((f, g));
        }
        if n < 4 {
            return None;
        }
        let (ints, lead) = p.integer_form();
        let qy = monic_integer_transform(&ints, &lead);
        let roots = numeric_roots(&qy)?;
        for size in 2..=n / 2 {
            for subset in combinations(n, size) {
                let cand = poly_from_roots(&subset.iter().map(|&i| roots[i]).collect::<Vec<_>>());
                let Some(int_cand) = round_integer_poly(&cand) else { continue };
                let f = Poly::new(int_cand.iter().map(|c| Q::from_integer(c.clone())).collect());
                let (quo, rem) = Poly::new(
                    qy.iter().map(|c| Q::from_integer(c.clone())).collect(),
                )
                .divrem(&f);
                if rem.is_zero() && !quo.is_zero() {
                    // undo y = lead * x
                    let back = undo_transform(&f, &Q::from_integer(lead.clone()));
                    let (g, rem2) = p.divrem(&back);
                    if rem2.is_zero() {
                        return Some((back, g.monic()));
                    }
                }
            }
        }
        None
    }

    /// A rational root, if one exists (rational root theorem).
    pub fn rational_root(&self) -> Option<Q> {
        let (ints, _) = self.integer_form();
        if ints.is_empty() {
            return None;
        }
        if ints[0].is_zero() {
            return Some(Q::zero());
        }
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let small = |x: &BigInt| x.to_u64().filter(|&v| v <= 1_000_000);
        let (Some(a0s), Some(ans)) = (small(&a0), small(&an)) else {
            return self.rational_root_numeric();
        };
        let divisors = |m: u64| (1..=m).filter(move |d| m % d == 0);
        for num in divisors(a0s) {
            for den in divisors(ans) {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for s in [1i64, -1] {
                    let r = Q::new(BigInt::from(num as i64 * s), BigInt::from(den as i64));
                    if self.eval(&r).is_zero() {
                        return Some(r);
                    }
                }
            }
        }
        None
    }

    fn rational_root_numeric(&self) -> Option<Q> {
        let (ints, lead) = self.integer_form();
        let qy = monic_integer_transform(&ints, &lead);
        let roots = numeric_roots(&qy)?;
        let lead_q = Q::from_integer(lead);
        roots.iter().filter(|z| z.im.abs() < 1e-6).find_map(|z| {
            let y = Q::from_integer(BigInt::from(z.re.round() as i64));
            let x = y / &lead_q;
            self.eval(&x).is_zero().then_some(x)
        })
    }

    /// Primitive integer coefficient vector and its leading coefficient.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut ints: Vec<BigInt> = if g.is_zero() { ints } else { ints.iter().map(|c| c / &g).collect() };
        if ints.last().is_some_and(|l| l.is_negative()) {
            ints = ints.into_iter().map(|c| -c).collect();
        }
        let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
        (ints, lead)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coef = if i > 0 && c.is_one() {
                String::new()
            } else if i > 0 && *c == -Q::one() {
                "-".into()
            } else if i > 0 {
                format!("{}*", fmt_q(c))
            } else {
                fmt_q(c)
            };
            parts.push(format!("{coef}{mono}"));
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

/// `q(y) = a_n^{n-1} p(y / a_n)`, a monic integer polynomial.
fn monic_integer_transform(ints: &[BigInt], lead: &BigInt) -> Vec<BigInt> {
    let n = ints.len() - 1;
    (0..=n)
        .map(|i| if i == n { BigInt::one() } else { &ints[i] * lead.pow((n - 1 - i) as u32) })
        .collect()
}

/// Inverts `y = lead * x` on a monic factor of the transformed polynomial.
fn undo_transform(f: &Poly, lead: &Q) -> Poly {
    let mut lp = Q::one();
    let mut c = Vec::new();
    for a in f.coeffs() {
        c.push(a * &lp);
        lp *= lead;
    }
    Poly::new(c).monic()
}

fn numeric_roots(ints: &[BigInt]) -> Option<Vec<nalgebra::Complex<f64>>> {
    let n = ints.len() - 1;
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -ints[i].to_f64()?;
    }
    Some(comp.complex_eigenvalues().iter().copied().collect())
}

fn poly_from_roots(roots: &[nalgebra::Complex<f64>]) -> Vec<nalgebra::Complex<f64>> {
    let mut c = vec![nalgebra::Complex::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![nalgebra::Complex::new(0.0, 0.0); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    c
}

fn round_integer_poly(c: &[nalgebra::Complex<f64>]) -> Option<Vec<BigInt>> {
    c.iter()
        .map(|z| {
            let r = z.re.round();
            let ok = z.im.abs() < 1e-4 && (z.re - r).abs() < 1e-4 * r.abs().max(1.0) && r.abs() < 9e15;
            ok.then(|| BigInt::from(r as i64))
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
