//! Spectral quantities: exact characteristic polynomials, adjacency
//! eigenvalues, graph energy, matching energy and the difference of the two.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{matching_vector, MatchingCache};
use crate::poly::IntPolynomial;
use crate::{quad, roots};

/// Characteristic polynomial det(xI - A) = sum_i a_i x^{n-i} with exact
/// integer coefficients, a_0 = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    /// Descending coefficients a_0, a_1, ..., a_n.
    pub coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn a(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Absolute coefficient b_i = |a_i|.
    pub fn b(&self, i: usize) -> BigUint {
        self.a(i).abs().to_biguint().unwrap()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }
}

/// Faddeev-LeVerrier over exact integers. Every division by the step index
/// must be exact; a nonzero remainder would mean the recurrence broke and is
/// treated as a fatal defect.
pub fn char_poly(g: &Graph) -> CharPoly {
    let n = g.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::from(1);
    if n == 0 {
        return CharPoly { coeffs };
    }
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|u| (0..n).map(|v| BigInt::from(g.has_edge(u, v) as u8)).collect())
        .collect();
    // m = A * (m_prev + c_prev * I); c_k = -tr(m) / k
    let mut m: Vec<Vec<BigInt>> = a.clone();
    for k in 1..=n {
        let tr: BigInt = (0..n).map(|i| m[i][i].clone()).sum();
        let (c, rem) = num_integer::Integer::div_rem(&-tr, &BigInt::from(k));
        assert!(rem.is_zero(), "characteristic polynomial recurrence lost integrality at step {k}");
        coeffs[k] = c.clone();
        if k == n {
            break;
        }
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() {
                        let mut term = m[l][j].clone();
                        if l == j {
                            term += &c;
                        }
                        acc += term;
                    }
                }
                // A has zero diagonal, so the c*I correction only matters on used entries
                next[i][j] = acc;
            }
        }
        m = next;
    }
    let cp = CharPoly { coeffs };
    debug_assert!(cp.a(1).is_zero(), "trace of a simple graph is zero");
    debug_assert_eq!(cp.a(2), BigInt::from(-(g.edge_count() as i64)));
    cp
}

/// Adjacency eigenvalues in descending order via cyclic Jacobi rotations.
pub fn eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut a = vec![0.0f64; n * n];
    for u in 0..n {
        for v in g.neighbors(u) {
            a[u * n + v] = 1.0;
        }
    }
    let mut vals = jacobi_eigenvalues(&mut a, n);
    vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
    vals
}

/// Cyclic Jacobi for a symmetric matrix, rotations applied until the
/// off-diagonal mass underflows to zero. Converges quadratically; 50 sweeps
/// is far beyond what order-32 matrices need.
fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];
    for sweep in 0..50 {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].abs())
            .sum();
        if off == 0.0 {
            return d;
        }
        let thresh = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g_val = 100.0 * a[p * n + q].abs();
                if sweep > 3 && d[p].abs() + g_val == d[p].abs() && d[q].abs() + g_val == d[q].abs() {
                    a[p * n + q] = 0.0;
                } else if a[p * n + q].abs() > thresh {
                    let mut h = d[q] - d[p];
                    let t = if h.abs() + g_val == h.abs() {
                        a[p * n + q] / h
                    } else {
                        let theta = 0.5 * h / a[p * n + q];
                        let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            t = -t;
                        }
                        t
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    h = t * a[p * n + q];
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[p * n + q] = 0.0;
                    let rotate = |a: &mut [f64], i: usize, j: usize, k: usize, l: usize| {
                        let g = a[i * n + j];
                        let h = a[k * n + l];
                        a[i * n + j] = g - s * (h + g * tau);
                        a[k * n + l] = h + s * (g - h * tau);
                    };
                    for j in 0..p {
                        rotate(a, j, p, j, q);
                    }
                    for j in p + 1..q {
                        rotate(a, p, j, j, q);
                    }
                    for j in q + 1..n {
                        rotate(a, p, j, q, j);
                    }
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    d
}

/// Sum of absolute adjacency eigenvalues.
pub fn graph_energy(g: &Graph) -> f64 {
    eigenvalues(g).iter().map(|v| v.abs()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeMethod {
    Roots,
    Quadrature,
    Both,
}

impl std::str::FromStr for MeMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "roots" => Ok(MeMethod::Roots),
            "quad" => Ok(MeMethod::Quadrature),
            "both" => Ok(MeMethod::Both),
            _ => Err(Error::Parse(format!("unknown method {s:?} (expected roots|quad|both)"))),
        }
    }
}

/// Matching energy with the zeros that produced it (roots method) and the
/// cross-check value (quadrature method).
#[derive(Clone, Debug)]
pub struct MatchingEnergy {
    pub value: f64,
    /// Zeros of the matching polynomial, descending; empty for pure quadrature.
    pub mu_roots: Vec<f64>,
    pub roots_value: Option<f64>,
    pub quadrature_value: Option<f64>,
    /// |roots - quadrature| when both were computed.
    pub method_gap: Option<f64>,
}

pub fn matching_energy(g: &Graph, method: MeMethod, tol: f64, cache: &MatchingCache) -> Result<MatchingEnergy> {
    let m = matching_vector(g, cache);
    let run_roots = matches!(method, MeMethod::Roots | MeMethod::Both);
    let run_quad = matches!(method, MeMethod::Quadrature | MeMethod::Both);
    let mut out = MatchingEnergy {
        value: 0.0,
        mu_roots: Vec::new(),
        roots_value: None,
        quadrature_value: None,
        method_gap: None,
    };
    if run_roots {
        let (value, mu) = roots::me_from_roots(m.as_slice(), g.n())?;
        out.roots_value = Some(value);
        out.mu_roots = mu;
        out.value = value;
    }
    if run_quad {
        let value = quad::me_by_quadrature(m.as_slice(), tol)?;
        out.quadrature_value = Some(value);
        if !run_roots {
            out.value = value;
        }
    }
    if let (Some(r), Some(q)) = (out.roots_value, out.quadrature_value) {
        out.method_gap = Some((r - q).abs());
    }
    Ok(out)
}

/// Graph energy minus matching energy (roots method).
pub fn tre(g: &Graph, cache: &MatchingCache) -> Result<f64> {
    let me = matching_energy(g, MeMethod::Roots, 1e-8, cache)?;
    Ok(graph_energy(g) - me.value)
}

#[derive(Clone, Debug, Serialize)]
pub struct EnergyReport {
    pub eigenvalues: Vec<f64>,
    pub energy: f64,
    pub matching_energy: f64,
    pub matching_roots: Vec<f64>,
    pub tre: f64,
    pub method_gap: Option<f64>,
}

impl EnergyReport {
    /// JSON with every real rounded to 12 significant digits.
    pub fn to_json(&self) -> String {
        let rounded = EnergyReport {
            eigenvalues: self.eigenvalues.iter().map(|&v| round_sig(v, 12)).collect(),
            energy: round_sig(self.energy, 12),
            matching_energy: round_sig(self.matching_energy, 12),
            matching_roots: self.matching_roots.iter().map(|&v| round_sig(v, 12)).collect(),
            tre: round_sig(self.tre, 12),
            method_gap: self.method_gap.map(|v| round_sig(v, 12)),
        };
        serde_json::to_string_pretty(&rounded).expect("report serializes")
    }
}

pub fn round_sig(v: f64, digits: i32) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let mag = v.abs().log10().floor() as i32;
    let shift = digits - 1 - mag;
    let factor = 10f64.powi(shift);
    (v * factor).round() / factor
}

pub fn energy_report(g: &Graph, method: MeMethod, tol: f64, cache: &MatchingCache) -> Result<EnergyReport> {
    let eigenvalues = eigenvalues(g);
    let energy: f64 = eigenvalues.iter().map(|v| v.abs()).sum();
    let me = matching_energy(g, method, tol, cache)?;
    Ok(EnergyReport {
        eigenvalues,
        energy,
        matching_energy: me.value,
        matching_roots: me.mu_roots,
        tre: energy - me.value,
        method_gap: me.method_gap,
    })
}
