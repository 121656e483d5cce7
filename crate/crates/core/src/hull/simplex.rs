//! Projection onto the convex hull of finitely many points by Wolfe's
//! nearest-point algorithm.

use crate::error::{Error, Result};
use crate::scalar::Real;

pub(crate) const MAX_ITERATIONS: usize = 100_000;

/// What the projection minimizes over `y` in the hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Target {
    /// `||x - y||^2`: distance to the hull.
    Point,
    /// `||(x - y)_+||^2`: distance to the hull minus the positive cone,
    /// i.e. to its downward closure.
    Dominated,
}

#[derive(Clone, Debug)]
pub(crate) struct Projection<T: Real> {
    pub weights: Vec<T>,
    /// `sum_i t_i a_i`.
    #[allow(dead_code)]
    pub point: Vec<T>,
    /// `x - y` or `(x - y)_+`; the separating direction at the optimum.
    pub residual: Vec<T>,
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

pub(crate) fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

fn combine<T: Real>(points: &[Vec<T>], weights: &[T], dim: usize) -> Vec<T> {
    let mut y = vec![T::zero(); dim];
    for (p, &w) in points.iter().zip(weights) {
        if w > T::zero() {
            for (yj, pj) in y.iter_mut().zip(p) {
                *yj += w * *pj;
            }
        }
    }
    y
}

pub(crate) fn residual<T: Real>(target: Target, x: &[T], y: &[T]) -> Vec<T> {
    x.iter()
        .zip(y)
        .map(|(a, b)| match target {
            Target::Point => *a - *b,
            Target::Dominated => (*a - *b).max(T::zero()),
        })
        .collect()
}

/// Nearest point to `x` of the hull (`Point`) or of its downward closure
/// (`Dominated`), by Wolfe's nearest-point algorithm.
///
/// The downward closure `conv(A) - R_+^d` is unbounded; it is replaced by
/// the polytope `conv(A) + conv{0, -K e_1, ..., -K e_d}` with
/// `K = 2 d max_ij (a_ij - x_j)_+`, which contains the nearest point since
/// the optimal slack satisfies `c_j <= max_i (a_ij - x_j)_+`.
pub(crate) fn project<T: Real>(points: &[Vec<T>], x: &[T], target: Target, tol: T) -> Result<Projection<T>> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    let dim = x.len();
    let (gens, owner) = generators(points, x, target);
    let q: Vec<Vec<T>> = gens.iter().map(|g| g.iter().zip(x).map(|(a, b)| *a - *b).collect()).collect();
    let wg = nearest_to_origin(&q, T::one() + norm(x), tol)?;
    let mut weights = vec![T::zero(); points.len()];
    for (&i, &w) in owner.iter().zip(&wg) {
        weights[i] += w;
    }
    let point = combine(points, &weights, dim);
    let residual = residual(target, x, &point);
    Ok(Projection { weights, point, residual })
}

/// The points, plus for `Dominated` each point pushed down by `K` along
/// every axis; `owner[k]` is the point generator `k` came from.
fn generators<T: Real>(points: &[Vec<T>], x: &[T], target: Target) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut gens = points.to_vec();
    let mut owner: Vec<usize> = (0..points.len()).collect();
    if target == Target::Dominated {
        let excess = points.iter().flat_map(|p| p.iter().zip(x).map(|(a, b)| *a - *b)).fold(T::zero(), T::max);
        if excess > T::zero() {
            let k = T::lit(2.0) * T::from_usize_lossy(x.len()) * excess;
            for (i, p) in points.iter().enumerate() {
                for j in 0..x.len() {
                    let mut g = p.clone();
                    g[j] -= k;
                    gens.push(g);
                    owner.push(i);
                }
            }
        }
    }
    (gens, owner)
}

/// Weights on `q` of the point of `conv(q)` nearest the origin.
///
/// Stops when the Frank-Wolfe gap falls below `tol^2`, below `1e-12` of
/// the objective or below its own roundoff floor, when the origin is
/// reached to `1e-9 scale`, or when a major step fails to decrease the
/// objective (roundoff).
fn nearest_to_origin<T: Real>(q: &[Vec<T>], scale: T, tol: T) -> Result<Vec<T>> {
    let dim = q[0].len();
    let exact = (T::lit(1e-9) * scale).powi(2);
    let spread = q.iter().fold(T::zero(), |acc, p| acc.max(norm(p)));
    let eps = T::epsilon();
    let start = (0..q.len())
        .min_by(|&i, &j| dot(&q[i], &q[i]).partial_cmp(&dot(&q[j], &q[j])).unwrap_or(std::cmp::Ordering::Equal))
        .expect("nonempty");
    let mut active = vec![start];
    let mut w = vec![T::one()];
    let mut last = T::infinity();

    let spread_out = |active: &[usize], w: &[T]| {
        let mut out = vec![T::zero(); q.len()];
        for (&k, &wk) in active.iter().zip(w) {
            out[k] += wk;
        }
        out
    };

    for _ in 0..MAX_ITERATIONS {
        let mut z = vec![T::zero(); dim];
        for (&k, &wk) in active.iter().zip(&w) {
            for (zj, qj) in z.iter_mut().zip(&q[k]) {
                *zj += wk * *qj;
            }
        }
        let obj = dot(&z, &z);
        let (j, score) = (0..q.len())
            .map(|k| (k, dot(&q[k], &z)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty");
        let gap = T::lit(2.0) * (obj - score);
        let floor = T::lit(64.0) * eps * obj.sqrt() * (obj.sqrt() + spread);
        if obj <= exact
            || gap <= tol * tol
            || gap <= T::lit(1e-12) * obj
            || gap <= floor
            || !(obj < last)
            || active.contains(&j)
        {
            return Ok(spread_out(&active, &w));
        }
        last = obj;
        active.push(j);
        w.push(T::zero());
        // minor cycle: walk toward the affine minimizer, shedding points
        // whose weight would turn negative
        loop {
            let Some(alpha) = affine_minimizer(q, &active) else {
                // q_j is numerically in the affine hull of the others
                active.pop();
                w.pop();
                return Ok(spread_out(&active, &w));
            };
            if alpha.iter().all(|&a| a > T::zero()) {
                w = alpha;
                break;
            }
            let (drop, theta) = (0..active.len())
                .filter(|&k| alpha[k] <= T::zero())
                .map(|k| (k, if w[k] > T::zero() { w[k] / (w[k] - alpha[k]) } else { T::zero() }))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
                .expect("a nonpositive weight");
            for (wk, &ak) in w.iter_mut().zip(&alpha) {
                *wk = (T::one() - theta) * *wk + theta * ak;
            }
            w[drop] = T::zero();
            let keep: Vec<usize> = (0..active.len()).filter(|&k| w[k] > T::zero()).collect();
            active = keep.iter().map(|&k| active[k]).collect();
            w = keep.iter().map(|&k| w[k]).collect();
            let total: T = w.iter().copied().sum();
            for wk in w.iter_mut() {
                *wk /= total;
            }
        }
    }
    Err(Error::NonConvergence { what: "simplex projection", iterations: MAX_ITERATIONS })
}

/// Minimizes `|sum_k alpha_k q_k|` subject to `sum_k alpha_k = 1` over the
/// active points: least squares on the edges `q_k - q_0` by twice-applied
/// Gram-Schmidt. `None` when the points are affinely dependent.
fn affine_minimizer<T: Real>(q: &[Vec<T>], active: &[usize]) -> Option<Vec<T>> {
    let base = &q[active[0]];
    let mut cols: Vec<Vec<T>> =
        active[1..].iter().map(|&k| q[k].iter().zip(base).map(|(a, b)| *a - *b).collect()).collect();
    let n = cols.len();
    let big = cols.iter().fold(T::zero(), |m, c| m.max(norm(c)));
    let mut r = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        let (done, rest) = cols.split_at_mut(i);
        let col = &mut rest[0];
        for _ in 0..2 {
            for (j, qj) in done.iter().enumerate() {
                let c = dot(qj, col);
                r[j][i] += c;
                for (a, b) in col.iter_mut().zip(qj) {
                    *a -= c * *b;
                }
            }
        }
        let len = norm(col);
        if !(len > T::lit(1e-10) * big) {
            return None;
        }
        r[i][i] = len;
        for a in col.iter_mut() {
            *a /= len;
        }
    }
    let mut beta: Vec<T> = cols.iter().map(|c| -dot(c, base)).collect();
    for i in (0..n).rev() {
        let s = ((i + 1)..n).fold(beta[i], |s, j| s - r[i][j] * beta[j]);
        beta[i] = s / r[i][i];
    }
    let mut alpha = Vec::with_capacity(n + 1);
    alpha.push(T::one() - beta.iter().copied().sum::<T>());
    alpha.extend(beta);
    Some(alpha)
}

/// Moves weight along null vectors of `[a_i; 1]` until at most `d + 1`
/// points carry weight; `sum t_i a_i` and `sum t_i` are preserved.
pub(crate) fn caratheodory<T: Real>(points: &[Vec<T>], weights: &mut [T]) {
    let dim = points.first().map_or(0, |p| p.len());
    loop {
        let support: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > T::zero()).collect();
        if support.len() <= dim + 1 {
            return;
        }
        // columns [a_i; 1] for the first d + 2 supported points
        let cols = &support[..dim + 2];
        let rows = dim + 1;
        let mut mat: Vec<Vec<T>> = (0..rows)
            .map(|r| cols.iter().map(|&i| if r < dim { points[i][r] } else { T::one() }).collect())
            .collect();
        let Some(v) = null_vector(&mut mat) else { return };
        let v = if v.iter().any(|&x| x > T::zero()) { v } else { v.into_iter().map(|x| -x).collect() };
        let (k, theta) = cols
            .iter()
            .zip(&v)
            .enumerate()
            .filter(|(_, (_, &vi))| vi > T::zero())
            .map(|(k, (&i, &vi))| (k, weights[i] / vi))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("a positive entry");
        for (&i, &vi) in cols.iter().zip(&v) {
            weights[i] = (weights[i] - theta * vi).max(T::zero());
        }
        weights[cols[k]] = T::zero();
        let total: T = weights.iter().copied().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
    }
}

/// A unit null vector of a wide matrix by Gaussian elimination with
/// partial pivoting; `None` if elimination finds no free column.
fn null_vector<T: Real>(mat: &mut [Vec<T>]) -> Option<Vec<T>> {
    let rows = mat.len();
    let cols = mat[0].len();
    let scale = mat.iter().flatten().fold(T::zero(), |m, x| m.max(x.abs()));
    let small = T::lit(1e-12) * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = (r..rows).max_by(|&i, &j| mat[i][c].abs().partial_cmp(&mat[j][c].abs()).unwrap())?;
        if mat[p][c].abs() <= small {
            continue;
        }
        mat.swap(r, p);
        let piv = mat[r][c];
        for j in c..cols {
            mat[r][j] /= piv;
        }
        for i in 0..rows {
            if i != r {
                let f = mat[i][c];
                if f != T::zero() {
                    for j in c..cols {
                        let v = mat[r][j];
                        mat[i][j] -= f * v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![T::zero(); cols];
    v[free] = T::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -mat[row][free];
    }
    Some(v)
}
