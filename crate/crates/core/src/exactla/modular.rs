use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::echelon::rank_of_vectors_capped;
use super::{Rational, SparseVec};

/// Largest prime below 2³²; products of two residues fit in a `u64`.
pub const MODULUS: u64 = 4_294_967_291;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= MODULUS;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % MODULUS;
        }
        b = b * b % MODULUS;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MODULUS - 2)
}

/// Image of `q` in 𝔽_p, or `None` when p divides the denominator.
pub fn reduce_mod_p(q: &Rational) -> Option<u64> {
    let big_p = num_bigint::BigInt::from(MODULUS);
    let residue = |x: &num_bigint::BigInt| -> u64 {
        let r = ((x % &big_p) + &big_p) % &big_p;
        r.to_u64().expect("residue below modulus")
    };
    let b = q.to_big();
    let den = residue(b.denom());
    if den == 0 {
        return None;
    }
    Some(residue(b.numer()) * inv_mod(den) % MODULUS)
}

type ModVec = Vec<(usize, u64)>;

fn to_mod(v: &SparseVec) -> Option<ModVec> {
    let mut out = Vec::with_capacity(v.nnz());
    for (i, c) in v.iter() {
        let r = reduce_mod_p(c)?;
        if r != 0 {
            out.push((i, r));
        }
    }
    Some(out)
}

/// `v - c·w` over 𝔽_p.
fn sub_scaled(v: &ModVec, c: u64, w: &ModVec) -> ModVec {
    let neg = MODULUS - c;
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i]);
            i += 1;
        } else if take_w {
            out.push((w[j].0, w[j].1 * neg % MODULUS));
            j += 1;
        } else {
            let s = (v[i].1 + w[j].1 * neg) % MODULUS;
            if s != 0 {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over 𝔽_p of the given vectors, stopping once `cap` is reached.
/// Returns `None` if some entry has a denominator divisible by p.
pub fn modular_rank_capped(vectors: &[SparseVec], cap: usize) -> Option<usize> {
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&k| vectors[k].nnz());
    let mut pivots: HashMap<usize, ModVec> = HashMap::new();
    for k in order {
        if pivots.len() >= cap {
            break;
        }
        let mut v = to_mod(&vectors[k])?;
        while let Some(&(lead, c)) = v.first() {
            match pivots.get(&lead) {
                Some(p) => v = sub_scaled(&v, c, p),
                None => {
                    let inv = inv_mod(c);
                    for e in v.iter_mut() {
                        e.1 = e.1 * inv % MODULUS;
                    }
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    /// Exact rational elimination.
    Exact,
    /// The 𝔽_p rank (a lower bound) met a proven upper bound.
    ModularMeetsBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub method: RankMethod,
}

/// Rank of `vectors` given a proven upper bound `cap`.
///
/// Any nonzero minor mod p is a nonzero rational minor, so the 𝔽_p rank
/// bounds the rational rank from below; when it reaches `cap` the rank is
/// settled. Otherwise falls back to exact elimination.
pub fn certified_rank(dim: usize, vectors: &[SparseVec], cap: usize) -> RankCertificate {
    let cap = cap.min(dim).min(vectors.len());
    if cap == 0 {
        return RankCertificate {
            rank: 0,
            method: RankMethod::Exact,
        };
    }
    if modular_rank_capped(vectors, cap) == Some(cap) {
        return RankCertificate {
            rank: cap,
            method: RankMethod::ModularMeetsBound,
        };
    }
    let mut sorted: Vec<&SparseVec> = vectors.iter().collect();
    sorted.sort_by_key(|v| v.nnz());
    RankCertificate {
        rank: rank_of_vectors_capped(dim, sorted.into_iter().cloned(), cap),
        method: RankMethod::Exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn residues() {
        assert_eq!(reduce_mod_p(&Rational::new(1, 2)), Some(MODULUS.div_ceil(2)));
        assert_eq!(reduce_mod_p(&Rational::from_integer(-1)), Some(MODULUS - 1));
        assert_eq!(reduce_mod_p(&Rational::new(1, MODULUS as i64)), None);
    }

    #[test]
    fn certificate_falls_back_when_bound_is_loose() {
        let v = vec![SparseVec::unit(0), SparseVec::unit(0)];
        let c = certified_rank(2, &v, 2);
        assert_eq!(
            c,
            RankCertificate {
                rank: 1,
                method: RankMethod::Exact
            }
        );
    }

    proptest! {
        #[test]
        fn modular_rank_never_exceeds_rational(entries in proptest::collection::vec((0usize..6, 0usize..6, -3i64..4), 0..20)) {
            let mut rows = vec![Vec::new(); 6];
            for (r, c, v) in entries {
                rows[r].push((c, Rational::from_integer(v)));
            }
            let vecs: Vec<SparseVec> = rows.into_iter().map(SparseVec::from_pairs).collect();
            let exact = rank_of_vectors_capped(6, vecs.clone(), 6);
            let modular = modular_rank_capped(&vecs, 6).unwrap();
            prop_assert!(modular <= exact);
            prop_assert_eq!(certified_rank(6, &vecs, exact).rank, exact);
        }
    }
}
