// Dense matrix code reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{VertexId, WeightedGraph};
use crate::error::{Error, Result};

/// `M_ii = -weight(v_i)`, `M_ij = 1` on edges, rows ordered by vertex id.
pub fn intersection_matrix(g: &WeightedGraph) -> Vec<Vec<i64>> {
    let (_, weights, adj) = g.to_dense();
    let n = weights.len();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = -(weights[i] as i64);
        for &j in &adj[i] {
            m[i][j] = 1;
        }
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FormTag {
    Elliptic,
    Parabolic,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormClass {
    pub tag: FormTag,
    pub negatives: usize,
    pub zeros: usize,
    pub positives: usize,
}

impl FormClass {
    fn from_counts(negatives: usize, zeros: usize, positives: usize) -> Self {
        let tag = match (zeros, positives) {
            (0, 0) => FormTag::Elliptic,
            (1, 0) => FormTag::Parabolic,
            _ => FormTag::Other,
        };
        FormClass {
            tag,
            negatives,
            zeros,
            positives,
        }
    }
}

/// Exact signature by symmetric congruence elimination over the rationals.
/// Trees are diagonalized leaf by leaf in machine words when possible.
pub fn classify_form(g: &WeightedGraph) -> FormClass {
    if g.is_tree() {
        let (_, weights, adj) = g.to_dense();
        if let Some((neg, zero, pos)) = tree_signature_small(&weights, &adj) {
            return FormClass::from_counts(neg, zero, pos);
        }
    }
    let m = intersection_matrix(g)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let (neg, zero, pos) = signature(m);
    FormClass::from_counts(neg, zero, pos)
}

fn signature(mut a: Vec<Vec<BigRational>>) -> (usize, usize, usize) {
    let n = a.len();
    let (mut neg, mut pos) = (0, 0);
    let mut k = 0;
    while k < n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, i, k);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !a[i][j].is_zero())
        {
            // a_ii = a_jj = 0 and a_ij ≠ 0: adding v_j to v_i makes the
            // diagonal entry 2·a_ij.
            for t in 0..n {
                let x = a[j][t].clone();
                a[i][t] += x;
            }
            for t in 0..n {
                let x = a[t][j].clone();
                a[t][i] += x;
            }
            swap_sym(&mut a, i, k);
        } else {
            break;
        }
        let p = a[k][k].clone();
        if p.is_negative() {
            neg += 1;
        } else {
            pos += 1;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &p;
            for c in k + 1..n {
                let d = &f * &a[k][c];
                a[r][c] -= d;
            }
        }
        for r in k + 1..n {
            a[r][k] = BigRational::zero();
            a[k][r] = BigRational::zero();
        }
        k += 1;
    }
    (neg, n - neg - pos, pos)
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, k: usize) {
    if i == k {
        return;
    }
    a.swap(i, k);
    for row in a.iter_mut() {
        row.swap(i, k);
    }
}

/// Primitive positive generator of the kernel of a parabolic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelVector {
    pub entries: BTreeMap<VertexId, BigUint>,
}

impl KernelVector {
    pub fn get(&self, v: VertexId) -> Option<&BigUint> {
        self.entries.get(&v)
    }
}

pub fn kernel_vector(g: &WeightedGraph) -> Result<KernelVector> {
    if !g.is_connected() || classify_form(g).tag != FormTag::Parabolic {
        return Err(Error::NotParabolic);
    }
    let m = intersection_matrix(g);
    let x = null_vector(&m).ok_or(Error::NotParabolic)?;

    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = x.iter().map(|v| (v * &lcm).to_integer()).collect();
    let g_all = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    for v in &mut ints {
        *v /= &g_all;
    }
    if ints.iter().all(Signed::is_negative) {
        for v in &mut ints {
            *v = -v.clone();
        }
    }
    if !ints.iter().all(Signed::is_positive) {
        return Err(Error::NonPositiveKernel);
    }
    for (row, _) in m.iter().zip(&ints) {
        let s: BigInt = row
            .iter()
            .zip(&ints)
            .map(|(&a, x)| BigInt::from(a) * x)
            .sum();
        assert!(s.is_zero(), "kernel vector is not annihilated by the form");
    }
    Ok(KernelVector {
        entries: g
            .vertices()
            .zip(ints)
            .map(|(v, x)| (v, x.to_biguint().unwrap()))
            .collect(),
    })
}

/// One nonzero vector of a one-dimensional rational null space.
fn null_vector(m: &[Vec<i64>]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for c in 0..n {
            a[row][c] *= &inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let d = &f * &a[row][c];
                    a[r][c] -= d;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if pivot_cols.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![BigRational::zero(); n];
    x[free] = BigRational::one();
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = -a[r][free].clone();
    }
    Some(x)
}

/// Breadth-first order and parents of a forest given by adjacency lists.
pub(crate) fn forest_order(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    order.push(u);
                }
            }
            i += 1;
        }
    }
    (order, parent)
}

/// Solves `M x = rhs` on a forest by leaf-to-root substitution, where `M` is
/// the intersection matrix of the weighted forest. An indefinite forest can
/// meet a zero pivot while still being invertible; then the system is solved
/// by dense elimination. Returns a vertex without a pivot when `M` is
/// singular.
pub fn tree_solve(
    weights: &[u32],
    adj: &[Vec<usize>],
    rhs: &[BigRational],
) -> std::result::Result<Vec<BigRational>, usize> {
    let (order, parent) = forest_order(adj);
    let small: Option<Vec<i128>> = rhs
        .iter()
        .map(|r| r.is_integer().then(|| r.to_integer().to_i128()).flatten())
        .collect();
    let leafwise = match small.and_then(|rhs| tree_solve_int(weights, &rhs, &order, &parent)) {
        Some(x) => x.map(|(y, det)| {
            y.into_iter()
                .zip(det)
                .map(|(a, b)| BigRational::new(a.into(), b.into()))
                .collect()
        }),
        None => tree_solve_big(weights, rhs, &order, &parent),
    };
    leafwise.or_else(|_| dense_solve(weights, adj, rhs))
}

fn dense_solve(
    weights: &[u32],
    adj: &[Vec<usize>],
    rhs: &[BigRational],
) -> std::result::Result<Vec<BigRational>, usize> {
    let n = weights.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = vec![BigRational::zero(); n + 1];
            row[i] = BigRational::from_integer(-BigInt::from(weights[i]));
            for &j in &adj[i] {
                row[j] = BigRational::one();
            }
            row[n] = rhs[i].clone();
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(col)?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for c in col..=n {
            a[col][c] *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Numerators and denominators of a solution.
pub type IntSolution = (Vec<i128>, Vec<i128>);

/// [`tree_solve`] for integral right-hand sides in machine integers. The
/// solution is `x[v] = num[v] / den[v]`, not reduced, where `den[v]` is the
/// determinant of the component of `v`. `None` if an intermediate value
/// overflows.
pub fn tree_solve_i128(
    weights: &[u32],
    adj: &[Vec<usize>],
    rhs: &[i128],
) -> Option<std::result::Result<IntSolution, usize>> {
    let (order, parent) = forest_order(adj);
    tree_solve_int(weights, rhs, &order, &parent)
}

/// Fraction-free variant for integral right-hand sides. Each pivot is kept
/// as `num/den` with `den` the product of the children's numerators, so the
/// numerator at a root is the determinant of its component and every
/// solution is an integer over it. `None` on overflow.
fn tree_solve_int(
    weights: &[u32],
    rhs: &[i128],
    order: &[usize],
    parent: &[Option<usize>],
) -> Option<std::result::Result<IntSolution, usize>> {
    let n = weights.len();
    let mut num: Vec<i128> = weights.iter().map(|&w| -(w as i128)).collect();
    let mut den = vec![1i128; n];
    let mut e = rhs.to_vec();
    for &v in order.iter().rev() {
        if num[v] == 0 {
            return Some(Err(v));
        }
        if let Some(p) = parent[v] {
            num[p] = num[p]
                .checked_mul(num[v])?
                .checked_sub(den[v].checked_mul(den[p])?)?;
            e[p] = e[p]
                .checked_mul(num[v])?
                .checked_sub(e[v].checked_mul(den[p])?)?;
            den[p] = den[p].checked_mul(num[v])?;
        }
    }
    let mut root = vec![0usize; n];
    let mut y = vec![0i128; n];
    for &v in order {
        match parent[v] {
            None => {
                root[v] = v;
                y[v] = e[v];
            }
            Some(p) => {
                root[v] = root[p];
                let det = num[root[v]];
                let t = e[v]
                    .checked_mul(det)?
                    .checked_sub(y[p].checked_mul(den[v])?)?;
                if t % num[v] != 0 {
                    return None;
                }
                y[v] = t / num[v];
            }
        }
    }
    let det = (0..n).map(|v| num[root[v]]).collect();
    Some(Ok((y, det)))
}

fn tree_solve_big(
    weights: &[u32],
    rhs: &[BigRational],
    order: &[usize],
    parent: &[Option<usize>],
) -> std::result::Result<Vec<BigRational>, usize> {
    let n = weights.len();
    let mut pivot: Vec<BigRational> = weights
        .iter()
        .map(|&w| BigRational::from_integer(-BigInt::from(w)))
        .collect();
    let mut eff = rhs.to_vec();
    for &v in order.iter().rev() {
        if pivot[v].is_zero() {
            return Err(v);
        }
        if let Some(p) = parent[v] {
            let inv = pivot[v].recip();
            pivot[p] -= &inv;
            let d = &eff[v] * &inv;
            eff[p] -= d;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for &v in order {
        let up = parent[v].map_or_else(BigRational::zero, |p| x[p].clone());
        x[v] = (&eff[v] - up) / &pivot[v];
    }
    Ok(x)
}

type Small = Ratio<i128>;

/// Form class of a weighted tree in dense form. Uses leaf elimination with
/// machine-word rationals and drops to the general routine on overflow or a
/// vanishing non-root pivot.
pub fn classify_tree_dense(weights: &[u32], adj: &[Vec<usize>]) -> FormTag {
    debug_assert_eq!(
        adj.iter().map(Vec::len).sum::<usize>(),
        2 * (weights.len() - 1)
    );
    match tree_tag_small(weights, adj) {
        Some(tag) => tag,
        None => {
            let g = WeightedGraph::from_dense(weights, adj).expect("dense tree is valid");
            classify_form(&g).tag
        }
    }
}

fn tree_tag_small(weights: &[u32], adj: &[Vec<usize>]) -> Option<FormTag> {
    let (neg, zero, pos) = tree_signature_small(weights, adj)?;
    Some(FormClass::from_counts(neg, zero, pos).tag)
}

/// Leaf-to-root congruence on a forest: eliminating a leaf with pivot `p`
/// subtracts `1/p` from its parent's pivot. `None` on overflow or when a
/// non-root pivot vanishes.
fn tree_signature_small(weights: &[u32], adj: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let (order, parent) = forest_order(adj);
    let mut pivot: Vec<Small> = weights
        .iter()
        .map(|&w| Small::from_integer(-(w as i128)))
        .collect();
    let (mut neg, mut zero, mut pos) = (0, 0, 0);
    for &v in order.iter().rev() {
        match parent[v] {
            Some(_) if pivot[v].is_zero() => return None,
            Some(p) => {
                let inv = Small::one().checked_div(&pivot[v])?;
                pivot[p] = pivot[p].checked_sub(&inv)?;
            }
            None => {}
        }
        if pivot[v].is_negative() {
            neg += 1;
        } else if pivot[v].is_zero() {
            zero += 1;
        } else {
            pos += 1;
        }
    }
    Some((neg, zero, pos))
}
