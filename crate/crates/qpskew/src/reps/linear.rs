//! Homomorphism spaces, isomorphism testing and decomposition.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{RepError, Representation};
use crate::linalg::{q, Matrix, Poly, Q};

pub const DEFAULT_DIMENSION_BOUND: usize = 24;
pub const DEFAULT_SEED: u64 = 0xdec0;

/// A basis of `Hom(r1, r2)`, each element given by its vertex blocks.
pub fn hom_basis(r1: &Representation, r2: &Representation) -> Vec<BTreeMap<String, Matrix>> {
    let quiver = &r1.quiver;
    // unknown φ_v is a dim2(v) × dim1(v) block, stored row major
    let mut var_off = BTreeMap::new();
    let mut nvars = 0;
    for v in quiver.vertices() {
        var_off.insert(v.clone(), nvars);
        nvars += r2.dim(v) * r1.dim(v);
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for a in quiver.arrows() {
        let (s, t) = (&a.src, &a.tgt);
        let (m1, m2) = (r1.map(&a.id), r2.map(&a.id));
        let (d1s, d1t, d2s, d2t) = (r1.dim(s), r1.dim(t), r2.dim(s), r2.dim(t));
        // (m2 φ_s − φ_t m1)[i][j] = 0 for i < d2t, j < d1s
        for i in 0..d2t {
            for j in 0..d1s {
                let mut row = vec![Q::zero(); nvars];
                for k in 0..d2s {
                    row[var_off[s] + k * d1s + j] += m2.get(i, k);
                }
                for k in 0..d1t {
                    row[var_off[t] + i * d1t + k] -= m1.get(k, j);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ns = if rows.is_empty() { identity_basis(nvars) } else { Matrix::from_rows(rows).nullspace() };
    ns.into_iter()
        .map(|vec| {
            quiver
                .vertices()
                .iter()
                .map(|v| {
                    let (r, c) = (r2.dim(v), r1.dim(v));
                    let mut m = Matrix::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            m.set(i, j, vec[var_off[v] + i * c + j].clone());
                        }
                    }
                    (v.clone(), m)
                })
                .collect()
        })
        .collect()
}

fn identity_basis(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v
        })
        .collect()
}

/// Block-diagonal matrix on the total space.
fn assemble(r: &Representation, blocks: &BTreeMap<String, Matrix>) -> Matrix {
    let n = r.total_dim();
    let off = r.offsets();
    let mut m = Matrix::zeros(n, n);
    for v in r.quiver.vertices() {
        m.paste(off[v], off[v], &blocks[v]);
    }
    m
}

/// A basis of `End(r)` as matrices on the total space.
pub fn end_basis(r: &Representation) -> Vec<Matrix> {
    hom_basis(r, r).iter().map(|b| assemble(r, b)).collect()
}

fn combine(basis: &[BTreeMap<String, Matrix>], coeffs: &[Q], r1: &Representation, r2: &Representation) -> Matrix {
    let n = r1.total_dim();
    let (o1, o2) = (r1.offsets(), r2.offsets());
    let mut m = Matrix::zeros(r2.total_dim(), n);
    for (b, c) in basis.iter().zip(coeffs) {
        for v in r1.quiver.vertices() {
            let cur = m.submatrix(o2[v], o1[v], r2.dim(v), r1.dim(v));
            m.paste(o2[v], o1[v], &cur.add(&b[v].scale(c)));
        }
    }
    m
}

/// Decides whether the two representations are isomorphic.
///
/// Equal dimension vectors and equal dimensions of `Hom(r1,r2)`, `Hom(r2,r1)`
/// and both endomorphism rings are required. An invertible element of
/// `Hom(r1,r2)` is then sought among pseudorandom combinations of a basis; the
/// determinant of a generic combination is a nonzero polynomial exactly when
/// an isomorphism exists, so twenty independent misses with coefficients of
/// size up to 10⁶ leave no practical doubt at these dimensions.
pub fn is_isomorphic(r1: &Representation, r2: &Representation) -> bool {
    if r1.quiver != r2.quiver || r1.dims() != r2.dims() {
        return false;
    }
    if r1.total_dim() == 0 {
        return true;
    }
    let h12 = hom_basis(r1, r2);
    let dims = [h12.len(), hom_basis(r2, r1).len(), hom_basis(r1, r1).len(), hom_basis(r2, r2).len()];
    if dims.iter().any(|&d| d != dims[0]) || h12.is_empty() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x51ce);
    for attempt in 0..20 {
        let coeffs: Vec<Q> = if attempt == 0 {
            vec![Q::one(); h12.len()]
        } else {
            (0..h12.len()).map(|_| q(rng.gen_range(-1_000_000..=1_000_000))).collect()
        };
        if combine(&h12, &coeffs, r1, r2).is_invertible() {
            return true;
        }
    }
    false
}

/// Splits `r` into indecomposable summands (total dimension at most 24).
pub fn decompose(r: &Representation) -> Result<Vec<Representation>, RepError> {
    decompose_with_bound(r, DEFAULT_DIMENSION_BOUND)
}

pub fn decompose_with_bound(r: &Representation, bound: usize) -> Result<Vec<Representation>, RepError> {
    decompose_seeded(r, bound, DEFAULT_SEED)
}

/// As [`decompose_with_bound`], drawing the random endomorphisms from `seed`.
/// The summands found are the same up to isomorphism for every seed.
pub fn decompose_seeded(r: &Representation, bound: usize, seed: u64) -> Result<Vec<Representation>, RepError> {
    if r.total_dim() > bound {
        return Err(RepError::DimensionBound { dim: r.total_dim(), bound });
    }
    let mut todo = vec![r.clone()];
    let mut out = Vec::new();
    while let Some(x) = todo.pop() {
        if x.total_dim() == 0 {
            continue;
        }
        match split(&x, seed)? {
            Some((a, b)) => {
                todo.push(b);
                todo.push(a);
            }
            None => out.push(x),
        }
    }
    out.sort_by_key(|x| std::cmp::Reverse(x.dim_vector()));
    Ok(out)
}

/// Dimension of `End(r)` modulo its radical, the radical being the kernel
/// of the trace form `(x, y) ↦ tr(xy)` (valid in characteristic zero).
pub fn top_dimension(basis: &[Matrix]) -> usize {
    let k = basis.len();
    let gram: Vec<Vec<Q>> = (0..k).map(|i| (0..k).map(|j| basis[i].mul(&basis[j]).trace()).collect()).collect();
    if k == 0 {
        return 0;
    }
    Matrix::from_rows(gram).rank()
}

/// Finds a decomposition `r = a ⊕ b` into nonzero summands, or certifies that
/// the endomorphism ring is local.
fn split(r: &Representation, seed: u64) -> Result<Option<(Representation, Representation)>, RepError> {
    let basis = end_basis(r);
    let top = top_dimension(&basis);
    if top <= 1 {
        return Ok(None);
    }
    let mut candidates: Vec<Matrix> = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(basis[i].add(&basis[j]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..24 {
        let mut m = Matrix::zeros(r.total_dim(), r.total_dim());
        for b in &basis {
            m = m.add(&b.scale(&q(rng.gen_range(-9..=9))));
        }
        candidates.push(m);
    }
    let mut obstruction: Option<Poly> = None;
    for x in &candidates {
        let p = x.charpoly().squarefree_part().monic();
        if p.degree().unwrap_or(0) < 2 {
            continue;
        }
        match p.split_rational() {
            Some((f, g)) => return Ok(Some(fitting_split(r, x, &f, &g))),
            None => {
                if obstruction.as_ref().map_or(true, |o| p.degree() > o.degree()) {
                    obstruction = Some(p);
                }
            }
        }
    }
    let poly = obstruction.map(|p| p.to_string()).unwrap_or_else(|| "an unknown polynomial".into());
    Err(RepError::FieldObstruction(poly))
}

/// `r = ker f(x)^N ⊕ ker g(x)^N` for coprime `f`, `g` with `fg` the
/// squarefree part of the characteristic polynomial of `x`.
fn fitting_split(r: &Representation, x: &Matrix, f: &Poly, g: &Poly) -> (Representation, Representation) {
    let n = r.total_dim();
    let fx = x.eval_poly(f).pow(n);
    let gx = x.eval_poly(g).pow(n);
    (graded_kernel(r, &fx), graded_kernel(r, &gx))
}

/// The subrepresentation `ker k` for a block-diagonal endomorphism `k`.
fn graded_kernel(r: &Representation, k: &Matrix) -> Representation {
    let off = r.offsets();
    let mut bases: BTreeMap<String, Matrix> = BTreeMap::new();
    for v in r.quiver.vertices() {
        let d = r.dim(v);
        let block = k.submatrix(off[v], off[v], d, d);
        let ns = if d == 0 { Vec::new() } else { block.nullspace() };
        bases.insert(v.clone(), Matrix::from_cols(d, &ns));
    }
    subrepresentation(r, &bases)
}

/// The subrepresentation spanned by the given per-vertex bases, which must
/// be closed under the arrows.
pub(crate) fn subrepresentation(r: &Representation, bases: &BTreeMap<String, Matrix>) -> Representation {
    let dims = bases.iter().map(|(v, b)| (v.clone(), b.cols())).collect();
    let mut maps = BTreeMap::new();
    for a in r.quiver.arrows() {
        let (bs, bt) = (&bases[&a.src], &bases[&a.tgt]);
        let img = r.map(&a.id).mul(bs);
        let m = if bt.cols() == 0 || bs.cols() == 0 {
            Matrix::zeros(bt.cols(), bs.cols())
        } else {
            bt.solve_matrix(&img).expect("subspace is closed under the arrows")
        };
        maps.insert(a.id.clone(), m);
    }
    Representation::new(&r.quiver, dims, maps).expect("subrepresentation shapes")
}
