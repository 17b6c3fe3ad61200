//! Exact localization of matching-polynomial zeros.
//!
//! The matching polynomial of an n-vertex graph is mu^{n-2M} * q(mu^2) up to
//! sign, where q(x) = sum_k (-1)^k m_k x^{M-k} and M = floor(n/2). All zeros
//! of q are real and nonnegative, so the matching energy is 2 * sum of
//! sqrt(x) over the positive zeros x with multiplicity. This module finds
//! those zeros rigorously: a squarefree decomposition over the rationals
//! splits multiplicities, Sturm chains over the integers certify the count
//! of real zeros per factor, and dyadic bisection pins each one down.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Matching energy and all n zeros of the matching polynomial (descending).
pub fn me_from_roots(m: &[BigUint], n: usize) -> Result<(f64, Vec<f64>)> {
    let mstar = match (0..m.len()).rev().find(|&k| !m[k].is_zero()) {
        Some(k) => k,
        None => return Err(Error::RootIsolation("empty matching vector".into())),
    };
    if mstar == 0 {
        return Ok((0.0, vec![0.0; n]));
    }
    // q reduced by its power of x: degree m*, nonzero constant term
    let qt: Vec<BigInt> = (0..=mstar)
        .map(|k| {
            let c = BigInt::from(m[k].clone());
            if k % 2 == 1 { -c } else { c }
        })
        .collect();

    let factors = squarefree_factors(&qt);
    let total: usize = factors.iter().map(|(f, mult)| (f.len() - 1) * mult).sum();
    if total != mstar {
        return Err(Error::RootIsolation("squarefree decomposition lost degree".into()));
    }

    let mut energy = 0.0f64;
    let mut x_roots: Vec<(f64, usize)> = Vec::new();
    for (f, mult) in &factors {
        for x in positive_real_roots(f)? {
            energy += 2.0 * (*mult as f64) * x.sqrt();
            x_roots.push((x, *mult));
        }
    }

    // first Newton identity: the zeros of q sum to m_1
    let m1 = m[1].to_f64().unwrap_or(f64::MAX);
    let sum_x: f64 = x_roots.iter().map(|(x, mult)| x * *mult as f64).sum();
    if (sum_x - m1).abs() > 1e-6 * m1.max(1.0) {
        return Err(Error::RootIsolation(format!(
            "zero sum {sum_x} disagrees with edge count {m1}"
        )));
    }

    let mut mu = Vec::with_capacity(n);
    for (x, mult) in &x_roots {
        for _ in 0..*mult {
            mu.push(x.sqrt());
        }
    }
    mu.extend(std::iter::repeat(0.0).take(n - 2 * mstar));
    for i in 0..x_roots.len() {
        let (x, mult) = x_roots[i];
        for _ in 0..mult {
            mu.push(-x.sqrt());
        }
    }
    mu.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((energy, mu))
}

/// All real zeros of a squarefree primitive integer polynomial, certified by
/// a Sturm chain. Errors unless every zero is real and strictly positive.
fn positive_real_roots(f: &[BigInt]) -> Result<Vec<f64>> {
    let deg = f.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        // c0 x + c1 = 0
        let x = BigRational::new(-f[1].clone(), f[0].clone());
        if !x.is_positive() {
            return Err(Error::RootIsolation("nonpositive zero of the reduced polynomial".into()));
        }
        return Ok(vec![x.to_f64().unwrap()]);
    }
    let chain = sturm_chain(f);
    let bound = cauchy_bound(f);
    let neg = BigRational::from(-bound.clone());
    let zero = BigRational::zero();
    let pos = BigRational::from(bound);
    let v_neg = variations(&chain, &neg);
    let v_zero = variations(&chain, &zero);
    let v_pos = variations(&chain, &pos);
    if v_neg - v_pos != deg {
        return Err(Error::RootIsolation(format!(
            "only {} of {deg} zeros are real",
            v_neg - v_pos
        )));
    }
    if v_neg != v_zero {
        return Err(Error::RootIsolation("nonpositive zero of the reduced polynomial".into()));
    }

    // bisect (0, B] into intervals holding exactly one zero each
    let mut stack = vec![(zero, pos, v_zero, v_pos)];
    let mut isolated = Vec::new();
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        match vlo - vhi {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
                let vm = variations(&chain, &mid);
                stack.push((lo, mid.clone(), vlo, vm));
                stack.push((mid, hi, vm, vhi));
            }
        }
    }
    let mut roots: Vec<f64> = isolated
        .into_iter()
        .map(|(lo, hi)| refine_root(f, lo, hi))
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

/// Plain sign bisection inside a half-open interval (lo, hi] known to hold
/// exactly one simple zero. The low endpoint may itself be a different zero
/// of `f` (sign 0), so the bisection is anchored on the sign at `hi`.
fn refine_root(f: &[BigInt], mut lo: BigRational, mut hi: BigRational) -> f64 {
    let two = BigRational::from(BigInt::from(2));
    let s_hi = sign_at(f, &hi);
    if s_hi == 0 {
        return hi.to_f64().unwrap();
    }
    for _ in 0..80 {
        let width = (hi.to_f64().unwrap() - lo.to_f64().unwrap()).abs();
        if width <= 1e-13 * hi.to_f64().unwrap().abs().max(1.0) {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let s_mid = sign_at(f, &mid);
        if s_mid == 0 {
            return mid.to_f64().unwrap();
        }
        if s_mid == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo.to_f64().unwrap() + hi.to_f64().unwrap()) / 2.0
}

/// Cauchy bound: every zero has absolute value below 1 + max |c_i| / |c_0|,
/// rounded up to an integer so that repeated halving stays dyadic.
fn cauchy_bound(f: &[BigInt]) -> BigInt {
    let lead = f[0].abs();
    let max = f[1..].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    let (q, r) = max.div_rem(&lead);
    let ceil = if r.is_zero() { q } else { q + 1 };
    ceil + 2
}

/// Sturm chain of a squarefree primitive polynomial. Pseudo-remainders keep
/// the arithmetic in the integers; every scale factor applied is positive, so
/// sign variations behave exactly as for the rational chain.
fn sturm_chain(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut chain = vec![f.to_vec(), derivative(f)];
    loop {
        let a = &chain[chain.len() - 2];
        let b = &chain[chain.len() - 1];
        if b.len() <= 1 {
            break;
        }
        let next = neg_pseudo_rem(a, b);
        if next.is_empty() {
            break;
        }
        chain.push(next);
    }
    chain
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    let deg = f.len() - 1;
    (0..deg).map(|i| &f[i] * BigInt::from(deg - i)).collect()
}

/// -rem(a, b) up to a positive constant, made primitive.
fn neg_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lead = b[0].clone();
    let mut r = a.to_vec();
    let mut steps = 0usize;
    while r.len() >= b.len() {
        let lr = r[0].clone();
        for c in r.iter_mut() {
            *c *= &lead;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j] -= &lr * bc;
        }
        debug_assert!(r[0].is_zero());
        r.remove(0);
        while !r.is_empty() && r[0].is_zero() {
            r.remove(0);
        }
        steps += 1;
    }
    if r.is_empty() {
        return r;
    }
    // each step scaled by lead; correct the overall sign back to the true remainder
    if lead.is_negative() && steps % 2 == 1 {
        for c in r.iter_mut() {
            *c = -c.clone();
        }
    }
    for c in r.iter_mut() {
        *c = -c.clone();
    }
    primitive_signed(r)
}

/// Divide by the positive content, keeping the sign pattern.
fn primitive_signed(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in &p {
        content = content.gcd(c);
    }
    if content > BigInt::from(1) {
        for c in p.iter_mut() {
            *c = &*c / &content;
        }
    }
    p
}

/// Number of sign changes of the chain at a rational point. Denominators are
/// cleared so the evaluation stays in the integers.
fn variations(chain: &[Vec<BigInt>], x: &BigRational) -> usize {
    let mut prev = 0i8;
    let mut count = 0usize;
    for p in chain {
        let s = sign_at(p, x);
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

fn sign_at(p: &[BigInt], x: &BigRational) -> i8 {
    let numer = x.numer();
    let denom = x.denom();
    let mut acc = p[0].clone();
    let mut dpow = BigInt::from(1);
    for c in &p[1..] {
        dpow *= denom;
        acc = acc * numer + c * &dpow;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

// ---- squarefree decomposition over the rationals (Yun's algorithm) ----

type RatPoly = Vec<BigRational>;

/// f = prod factor^multiplicity with each factor squarefree and pairwise
/// coprime; factors are returned as primitive integer polynomials with
/// positive leading coefficient, constants dropped.
fn squarefree_factors(f: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
    let fr: RatPoly = f.iter().map(|c| BigRational::from(c.clone())).collect();
    let df = rp_derivative(&fr);
    let g = rp_gcd(&fr, &df);
    let mut out = Vec::new();
    if g.len() <= 1 {
        out.push((primitive_from_rational(&fr), 1));
        return out;
    }
    let mut w = rp_div_exact(&fr, &g);
    let y = rp_div_exact(&df, &g);
    let mut z = rp_sub(&y, &rp_derivative(&w));
    let mut i = 1usize;
    while w.len() > 1 {
        let fi = rp_gcd(&w, &z);
        if fi.len() > 1 {
            out.push((primitive_from_rational(&fi), i));
        }
        w = rp_div_exact(&w, &fi);
        let y = rp_div_exact(&z, &fi);
        z = rp_sub(&y, &rp_derivative(&w));
        i += 1;
    }
    out
}

fn rp_trim(mut p: RatPoly) -> RatPoly {
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    p
}

fn rp_derivative(p: &RatPoly) -> RatPoly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    let deg = p.len() - 1;
    (0..deg)
        .map(|i| &p[i] * BigRational::from(BigInt::from(deg - i)))
        .collect()
}

fn rp_sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[n - a.len() + i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[n - b.len() + i] -= c;
    }
    rp_trim(out)
}

fn rp_divrem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], rp_trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let coef = &r[0] / &b[0];
        let qi = q.len() - 1 - shift;
        q[qi] = coef.clone();
        for (j, bc) in b.iter().enumerate() {
            let t = &coef * bc;
            r[j] -= t;
        }
        r.remove(0);
        if r.is_empty() {
            r.push(BigRational::zero());
        }
    }
    (rp_trim(q), rp_trim(r))
}

fn rp_div_exact(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (q, r) = rp_divrem(a, b);
    assert!(r.iter().all(|c| c.is_zero()), "polynomial division was not exact");
    q
}

/// Monic gcd by the Euclidean algorithm.
fn rp_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut x = rp_trim(a.clone());
    let mut y = rp_trim(b.clone());
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = rp_divrem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x[0].clone();
    if !lead.is_zero() {
        for c in x.iter_mut() {
            *c = &*c / &lead;
        }
    }
    x
}

/// Clear denominators and divide by the content; leading coefficient > 0.
fn primitive_from_rational(p: &RatPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content > BigInt::from(1) {
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
    }
    if ints[0].is_negative() {
        for c in ints.iter_mut() {
            *c = -c.clone();
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m_of(vals: &[u64]) -> Vec<BigUint> {
        vals.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn single_edge() {
        let (me, mu) = me_from_roots(&m_of(&[1, 1]), 2).unwrap();
        assert!((me - 2.0).abs() < 1e-12);
        assert_eq!(mu.len(), 2);
        assert!((mu[0] - 1.0).abs() < 1e-12 && (mu[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_has_linear_reduced_polynomial() {
        // K_{1,4}: m = (1, 4)
        let (me, mu) = me_from_roots(&m_of(&[1, 4]), 5).unwrap();
        assert!((me - 4.0).abs() < 1e-12);
        assert_eq!(mu, vec![2.0, 0.0, 0.0, 0.0, -2.0]);
    }

    #[test]
    fn four_path_golden_ratio() {
        // P4: m = (1, 3, 1); zeros x = (3 +- sqrt 5)/2; ME = 2 sqrt 5
        let (me, mu) = me_from_roots(&m_of(&[1, 3, 1]), 4).unwrap();
        assert!((me - 2.0 * 5f64.sqrt()).abs() < 1e-11, "{me}");
        assert_eq!(mu.len(), 4);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((mu[0] - phi).abs() < 1e-11);
    }

    #[test]
    fn repeated_zero_from_two_disjoint_edges() {
        // 2 K_2: m = (1, 2, 1) => (x - 1)^2
        let (me, mu) = me_from_roots(&m_of(&[1, 2, 1]), 4).unwrap();
        assert!((me - 4.0).abs() < 1e-12);
        assert_eq!(mu, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn triple_zero() {
        // 3 K_2: m = (1, 3, 3, 1) => (x - 1)^3
        let (me, mu) = me_from_roots(&m_of(&[1, 3, 3, 1]), 6).unwrap();
        assert!((me - 6.0).abs() < 1e-12);
        assert_eq!(mu, vec![1.0, 1.0, 1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn mixed_multiplicity() {
        // 2 K_2 + one star K_{1,4}: vector = conv((1,2,1), (1,4)) = (1,6,9,4)
        // zeros: {1, 1, 4} -> ME = 2*(1 + 1 + 2) = 8
        let (me, _mu) = me_from_roots(&m_of(&[1, 6, 9, 4]), 9).unwrap();
        assert!((me - 8.0).abs() < 1e-11, "{me}");
    }

    #[test]
    fn six_cycle_closed_form() {
        // C6: m = (1, 6, 9, 2); ME = 2 sqrt 2 + 2 sqrt 6
        let (me, mu) = me_from_roots(&m_of(&[1, 6, 9, 2]), 6).unwrap();
        let expect = 2.0 * 2f64.sqrt() + 2.0 * 6f64.sqrt();
        assert!((me - expect).abs() < 1e-11, "{me} vs {expect}");
        assert_eq!(mu.len(), 6);
        assert!((mu[0] - (2.0 + 3f64.sqrt()).sqrt()).abs() < 1e-11);
    }

    #[test]
    fn trailing_zero_counts_are_tolerated() {
        let (me_a, _) = me_from_roots(&m_of(&[1, 3, 1, 0, 0]), 4).unwrap();
        let (me_b, _) = me_from_roots(&m_of(&[1, 3, 1]), 4).unwrap();
        assert_eq!(me_a, me_b);
    }

    #[test]
    fn edgeless_graph() {
        let (me, mu) = me_from_roots(&m_of(&[1]), 3).unwrap();
        assert_eq!(me, 0.0);
        assert_eq!(mu, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn sturm_chain_counts_simple_roots() {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let f: Vec<BigInt> = [1i64, -6, 11, -6].iter().map(|&c| BigInt::from(c)).collect();
        let roots = positive_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - e).abs() < 1e-12, "{roots:?}");
        }
    }

    #[test]
    fn complex_zeros_are_rejected() {
        // x^2 + 1 has no real zeros
        let f: Vec<BigInt> = [1i64, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert!(positive_real_roots(&f).is_err());
    }

    #[test]
    fn negative_zeros_are_rejected() {
        // x^2 - x - 2 = (x-2)(x+1)
        let f: Vec<BigInt> = [1i64, -1, -2].iter().map(|&c| BigInt::from(c)).collect();
        assert!(positive_real_roots(&f).is_err());
    }

    #[test]
    fn close_roots_are_separated() {
        // (x-1)(x - 1,000,001/1,000,000) scaled to integers:
        // 1000000 x^2 - 2000001 x + 1000001
        let f: Vec<BigInt> = [1_000_000i64, -2_000_001, 1_000_001]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        let roots = positive_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1.0).abs() < 1e-10);
        assert!((roots[1] - 1.000001).abs() < 1e-10);
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (x-1)^2 (x-3) = x^3 - 5x^2 + 7x - 3
        let f: Vec<BigInt> = [1i64, -5, 7, -3].iter().map(|&c| BigInt::from(c)).collect();
        let factors = squarefree_factors(&f);
        let mut mults: Vec<(usize, usize)> =
            factors.iter().map(|(p, m)| (p.len() - 1, *m)).collect();
        mults.sort();
        assert_eq!(mults, vec![(1, 1), (1, 2)]);
    }
}
