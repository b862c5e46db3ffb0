//! Dense BigRational reference implementations, written without the
//! library's sparse elimination so the two can be compared.
#![allow(dead_code)]

use morita_core::exactla::{LinearMap, Rational, SparseVec};
use morita_core::structures::StructureAlgebra;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Dense = Vec<Vec<BigRational>>;

pub fn dense_of_map(f: &LinearMap) -> Dense {
    let mut m = vec![vec![BigRational::zero(); f.source_dim()]; f.target_dim()];
    for (r, c, v) in f.matrix().triplets() {
        m[r][c] = v.to_big();
    }
    m
}

pub fn dense_of_rows(dim: usize, rows: &[SparseVec]) -> Dense {
    rows.iter()
        .map(|v| {
            let mut row = vec![BigRational::zero(); dim];
            for (k, c) in v.iter() {
                row[k] = c.to_big();
            }
            row
        })
        .collect()
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Plain Gauss–Jordan with first-nonzero pivoting.
pub fn dense_rank(mut m: Dense) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(BigRational::zero(), |s, k| s + row[k].clone() * b[k][c].clone()))
                .collect()
        })
        .collect()
}

fn structure(a: &StructureAlgebra) -> Vec<Vec<Vec<BigRational>>> {
    let d = a.dim();
    (0..d)
        .map(|p| {
            (0..d)
                .map(|q| {
                    let mut v = vec![BigRational::zero(); d];
                    for (k, c) in a.basis_product(p, q).iter() {
                        v[k] = c.to_big();
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Dense bar boundary `b_n: A ⊗ A^{⊗n} → A ⊗ A^{⊗(n-1)}` with regular
/// coefficients, built straight from the structure constants.
pub fn regular_bar_boundary(a: &StructureAlgebra, n: usize) -> Dense {
    let d = a.dim();
    let c = structure(a);
    let src: Vec<Vec<usize>> = tuples(d, n + 1);
    let tgt_dim = d.pow(n as u32);
    let index = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * d + x);
    let mut m = vec![vec![BigRational::zero(); src.len()]; tgt_dim];
    for (col, t) in src.iter().enumerate() {
        // faces i = 0..n-1 multiply t[i] t[i+1]; the last face wraps around
        for i in 0..n {
            let sign = if i % 2 == 0 { big(1) } else { big(-1) };
            for (k, coeff) in c[t[i]][t[i + 1]].iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut face: Vec<usize> = t[..i].to_vec();
                face.push(k);
                face.extend_from_slice(&t[i + 2..]);
                let r = index(&face);
                m[r][col] = m[r][col].clone() + sign.clone() * coeff.clone();
            }
        }
        let sign = if n.is_multiple_of(2) { big(1) } else { big(-1) };
        for (k, coeff) in c[t[n]][t[0]].iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut face = vec![k];
            face.extend_from_slice(&t[1..n]);
            let r = index(&face);
            m[r][col] = m[r][col].clone() + sign.clone() * coeff.clone();
        }
    }
    m
}

fn tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Betti numbers of `H_n(A, A)` for `n = 0..=n_max` from dense ranks.
pub fn regular_betti(a: &StructureAlgebra, n_max: usize) -> Vec<usize> {
    let d = a.dim();
    let ranks: Vec<usize> = (1..=n_max + 1)
        .map(|n| dense_rank(regular_bar_boundary(a, n)))
        .collect();
    (0..=n_max)
        .map(|n| {
            let dim = d.pow(n as u32 + 1);
            let into = if n == 0 { 0 } else { ranks[n - 1] };
            dim - into - ranks[n]
        })
        .collect()
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}
