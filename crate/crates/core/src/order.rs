//! Quasi-orders on graphs. The matching-count order compares m_k values
//! componentwise (shorter vectors padded with zeros); the coefficient order
//! compares |a_i| of the characteristic polynomial and requires equal orders.
//! On forests the two coincide, since |a_{2k}| = m_k and odd coefficients
//! vanish.

use num_bigint::BigUint;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{matching_vector, MatchingCache};
use crate::spectral::char_poly;

/// How the left graph relates to the right one under a componentwise order.
/// Vector comparison can only produce `Equal`, the two strict variants or
/// `Incomparable`: componentwise >= together with inequality forces a strict
/// index. The non-strict variants complete the schema and back the
/// `dominates`/`dominated` readings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dominance {
    Equal,
    Dominates,
    StrictlyDominates,
    DominatedBy,
    StrictlyDominatedBy,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiOrderResult {
    pub outcome: Dominance,
    /// Index witnessing strictness; for `Incomparable`, an index where the
    /// left value is larger.
    pub witness: Option<usize>,
    /// For `Incomparable`, an index where the right value is larger.
    pub counter_witness: Option<usize>,
    pub left_order: usize,
    pub right_order: usize,
    pub left_size: usize,
    pub right_size: usize,
}

impl QuasiOrderResult {
    /// Non-strict dominance of the left side.
    pub fn dominates(&self) -> bool {
        matches!(self.outcome, Dominance::Equal | Dominance::Dominates | Dominance::StrictlyDominates)
    }

    pub fn dominated(&self) -> bool {
        matches!(self.outcome, Dominance::Equal | Dominance::DominatedBy | Dominance::StrictlyDominatedBy)
    }
}

/// Componentwise comparison with zero padding beyond each vector's end.
pub fn compare_vectors(left: &[BigUint], right: &[BigUint]) -> (Dominance, Option<usize>, Option<usize>) {
    let len = left.len().max(right.len());
    let zero = BigUint::default();
    let mut first_gt = None;
    let mut first_lt = None;
    for k in 0..len {
        let l = left.get(k).unwrap_or(&zero);
        let r = right.get(k).unwrap_or(&zero);
        if l > r {
            first_gt.get_or_insert(k);
        } else if l < r {
            first_lt.get_or_insert(k);
        }
    }
    match (first_gt, first_lt) {
        (None, None) => (Dominance::Equal, None, None),
        (Some(k), None) => (Dominance::StrictlyDominates, Some(k), None),
        (None, Some(k)) => (Dominance::StrictlyDominatedBy, Some(k), None),
        (Some(g), Some(l)) => (Dominance::Incomparable, Some(g), Some(l)),
    }
}

/// Matching-count quasi-order; graphs of different orders are admitted, the
/// shorter count vector is padded with zeros.
pub fn compare_matching(left: &Graph, right: &Graph, cache: &MatchingCache) -> QuasiOrderResult {
    let lv = matching_vector(left, cache);
    let rv = matching_vector(right, cache);
    let (outcome, witness, counter_witness) = compare_vectors(lv.as_slice(), rv.as_slice());
    QuasiOrderResult {
        outcome,
        witness,
        counter_witness,
        left_order: left.n(),
        right_order: right.n(),
        left_size: left.edge_count(),
        right_size: right.edge_count(),
    }
}

/// Coefficient quasi-order on |a_i| of the characteristic polynomial.
/// Requires both graphs to have the same order.
pub fn compare_coeff(left: &Graph, right: &Graph) -> Result<QuasiOrderResult> {
    if left.n() != right.n() {
        return Err(Error::OrderMismatch(left.n(), right.n()));
    }
    let lb: Vec<BigUint> = char_poly(left)
        .coeffs
        .iter()
        .map(|c| c.abs().to_biguint().unwrap())
        .collect();
    let rb: Vec<BigUint> = char_poly(right)
        .coeffs
        .iter()
        .map(|c| c.abs().to_biguint().unwrap())
        .collect();
    let (outcome, witness, counter_witness) = compare_vectors(&lb, &rb);
    Ok(QuasiOrderResult {
        outcome,
        witness,
        counter_witness,
        left_order: left.n(),
        right_order: right.n(),
        left_size: left.edge_count(),
        right_size: right.edge_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};

    fn cmp(l: &Graph, r: &Graph) -> QuasiOrderResult {
        compare_matching(l, r, &MatchingCache::new())
    }

    #[test]
    fn quadrangle_strictly_dominates_star() {
        let c4 = build(&FamilySpec::Cycle { n: 4 }).unwrap();
        let s4 = build(&FamilySpec::Star { n: 4 }).unwrap();
        // (1,4,2) vs (1,3,0): strict already at k = 1
        let r = cmp(&c4, &s4);
        assert_eq!(r.outcome, Dominance::StrictlyDominates);
        assert_eq!(r.witness, Some(1));
        assert!(r.dominates() && !r.dominated());
        let back = cmp(&s4, &c4);
        assert_eq!(back.outcome, Dominance::StrictlyDominatedBy);
        assert_eq!(back.witness, Some(1));
    }

    #[test]
    fn different_orders_pad_with_zeros() {
        let p6 = build(&FamilySpec::Path { n: 6 }).unwrap();
        let p5 = build(&FamilySpec::Path { n: 5 }).unwrap();
        let p1 = build(&FamilySpec::Path { n: 1 }).unwrap();
        let r = cmp(&p6, &p5.disjoint_union(&p1).unwrap());
        assert_eq!(r.outcome, Dominance::StrictlyDominates);
        assert_eq!((r.left_order, r.right_order), (6, 6));
        // order mismatch allowed here
        let r = cmp(&p6, &p5);
        assert_eq!(r.outcome, Dominance::StrictlyDominates);
        assert_eq!(r.witness, Some(1));
    }

    #[test]
    fn incomparable_vectors_have_two_witnesses() {
        use num_bigint::BigUint;
        let a: Vec<BigUint> = [1u32, 5, 2].iter().map(|&x| x.into()).collect();
        let b: Vec<BigUint> = [1u32, 4, 3].iter().map(|&x| x.into()).collect();
        let (out, w, cw) = compare_vectors(&a, &b);
        assert_eq!(out, Dominance::Incomparable);
        assert_eq!((w, cw), (Some(1), Some(2)));
    }

    #[test]
    fn equal_on_isomorphic_graphs() {
        let u = build(&FamilySpec::UniMin { n: 8, d: 5 }).unwrap();
        let perm = [7usize, 0, 3, 1, 6, 2, 5, 4];
        let relabeled: Vec<_> = u.edges().iter().map(|&(x, y)| (perm[x], perm[y])).collect();
        let v = Graph::from_edge_list(8, &relabeled).unwrap();
        let r = cmp(&u, &v);
        assert_eq!(r.outcome, Dominance::Equal);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn mirror_property_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let cache = MatchingCache::new();
        for _ in 0..200 {
            let mut graphs = Vec::new();
            for _ in 0..2 {
                let n = rng.gen_range(1..=7);
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(0.5) {
                            edges.push((u, v));
                        }
                    }
                }
                graphs.push(Graph::from_edge_list(n, &edges).unwrap());
            }
            let fwd = compare_matching(&graphs[0], &graphs[1], &cache);
            let bwd = compare_matching(&graphs[1], &graphs[0], &cache);
            let mirrored = match fwd.outcome {
                Dominance::Equal => Dominance::Equal,
                Dominance::StrictlyDominates => Dominance::StrictlyDominatedBy,
                Dominance::StrictlyDominatedBy => Dominance::StrictlyDominates,
                Dominance::Incomparable => Dominance::Incomparable,
                Dominance::Dominates => Dominance::DominatedBy,
                Dominance::DominatedBy => Dominance::Dominates,
            };
            assert_eq!(bwd.outcome, mirrored);
            if fwd.outcome == Dominance::Incomparable {
                assert_eq!((bwd.witness, bwd.counter_witness), (fwd.counter_witness, fwd.witness));
            }
        }
    }

    #[test]
    fn coefficient_order_examples() {
        let p5 = build(&FamilySpec::Path { n: 5 }).unwrap();
        let s5 = build(&FamilySpec::Star { n: 5 }).unwrap();
        let r = compare_coeff(&p5, &s5).unwrap();
        assert_eq!(r.outcome, Dominance::StrictlyDominates);
        assert_eq!(r.witness, Some(4));
        let p4 = build(&FamilySpec::Path { n: 4 }).unwrap();
        assert!(matches!(compare_coeff(&p5, &p4), Err(Error::OrderMismatch(5, 4))));
    }

    #[test]
    fn coefficient_and_matching_orders_agree_on_forests() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let cache = MatchingCache::new();
        for _ in 0..100 {
            let n = rng.gen_range(2..=8);
            // random forests via random parent links, possibly cut
            let mut make = || {
                let mut edges = Vec::new();
                for v in 1..n {
                    if rng.gen_bool(0.8) {
                        edges.push((rng.gen_range(0..v), v));
                    }
                }
                Graph::from_edge_list(n, &edges).unwrap()
            };
            let f1 = make();
            let f2 = make();
            let mo = compare_matching(&f1, &f2, &cache);
            let co = compare_coeff(&f1, &f2).unwrap();
            assert_eq!(mo.outcome, co.outcome, "{f1:?} vs {f2:?}");
        }
    }
}
