//! Eigenspace signatures of a finite-order symplectic matrix.
//!
//! Let `M` have order dividing `n` and `zeta = exp(2 pi i / n)`. On the
//! `zeta^k`-eigenspace `V_k` of `M` (acting on column vectors) the form
//! `h(u, v) = i u^* J v` is Hermitian; its signature `(p_k, q_k)` is a
//! conjugacy invariant of `M` in `Sp(2g, R)`. For a periodic map `p_k` is the
//! multiplicity of `zeta^k` on holomorphic 1-forms, which the Eichler trace
//! formula computes from the data set alone.
//!
//! The trace profile only sees `p_k + q_k`, so two data sets with equal
//! fixed-point counts (every order-7 class in genus 3, say) are separated by
//! signatures but not by traces.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use super::SympMatrix;
use crate::arith::inv_mod;
use crate::dataset::DataSet;
use crate::{Error, Result};

const TOL: f64 = 1e-6;

/// Orientation of the local rotation at a cone point relative to the twist
/// convention: `F^(n/m)` turns a neighbourhood of the point by
/// `ROTATION_SIGN * 2 pi c^{-1} / m`. Fixed once by the genus-one table,
/// where `F` and `F^{-1}` have different rows.
pub const ROTATION_SIGN: f64 = -1.0;

/// `(p_k, q_k)` for `k = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureCheck {
    pub k: u32,
    /// Multiplicity of `zeta^k` on holomorphic forms predicted by the data set.
    pub expected: u32,
    pub positive: u32,
    pub negative: u32,
}

fn zeta(n: u32, k: i64) -> Complex<f64> {
    Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}

/// Signatures `(p_k, q_k)` of `h` on each eigenspace, `k = 0..n`.
pub fn eigen_signatures(m: &SympMatrix, n: u32) -> Vec<(u32, u32)> {
    let d = 2 * m.genus() as usize;
    let a = DMatrix::from_fn(d, d, |i, j| Complex::new(m.matrix()[(i, j)] as f64, 0.0));
    let mut j = DMatrix::<Complex<f64>>::zeros(d, d);
    for i in 0..m.genus() as usize {
        j[(2 * i, 2 * i + 1)] = Complex::new(1.0, 0.0);
        j[(2 * i + 1, 2 * i)] = Complex::new(-1.0, 0.0);
    }
    let mut powers = vec![DMatrix::<Complex<f64>>::identity(d, d)];
    for _ in 1..n {
        let next = powers.last().unwrap() * &a;
        powers.push(next);
    }
    (0..n)
        .map(|k| {
            let mut p = DMatrix::<Complex<f64>>::zeros(d, d);
            for (e, pw) in powers.iter().enumerate() {
                p += pw * zeta(n, -((e as i64) * k as i64));
            }
            p /= Complex::new(n as f64, 0.0);
            let h = p.adjoint() * &j * &p * Complex::new(0.0, 1.0);
            let h = (&h + h.adjoint()) * Complex::new(0.5, 0.0);
            let ev = h.symmetric_eigenvalues();
            let pos = ev.iter().filter(|x| **x > TOL).count() as u32;
            let neg = ev.iter().filter(|x| **x < -TOL).count() as u32;
            (pos, neg)
        })
        .collect()
}

/// Multiplicity of each `zeta^k`, `k = 0..n`, on holomorphic 1-forms of a
/// periodic map with data set `d`, by the Eichler trace formula.
pub fn holomorphic_multiplicities(d: &DataSet) -> Result<Vec<u32>> {
    let g = d.genus()?;
    let n = d.n;
    // tr(F^j | H^{1,0}) = 1 + sum over fixed points of z / (1 - z).
    let mut tr = vec![Complex::new(g as f64, 0.0)];
    for j in 1..n {
        let mut t = Complex::new(1.0, 0.0);
        for p in d.pairs() {
            let s = n / p.m;
            if j % s != 0 {
                continue;
            }
            let cinv = inv_mod(p.c as i64, p.m as i64).ok_or_else(|| Error::InvalidDataSet(d.to_string()))?;
            let angle = ROTATION_SIGN * 2.0 * std::f64::consts::PI * ((j / s) as i64 * cinv) as f64 / p.m as f64;
            let z = Complex::from_polar(1.0, angle);
            t += z / (Complex::new(1.0, 0.0) - z) * s as f64;
        }
        tr.push(t);
    }
    (0..n)
        .map(|k| {
            let s: Complex<f64> =
                tr.iter().enumerate().map(|(j, t)| t * zeta(n, -((j as i64) * k as i64))).sum::<Complex<f64>>()
                    / n as f64;
            let r = s.re.round();
            if (s.re - r).abs() > TOL || s.im.abs() > TOL || r < 0.0 {
                return Err(Error::InvalidDataSet(format!("{d}: non-integral eigenvalue multiplicity")));
            }
            Ok(r as u32)
        })
        .collect()
}

/// Per-eigenvalue comparison of the signatures of `m` against the data set.
pub fn signature_checks(m: &SympMatrix, d: &DataSet) -> Result<Vec<SignatureCheck>> {
    let want = holomorphic_multiplicities(d)?;
    Ok(eigen_signatures(m, d.n)
        .into_iter()
        .zip(want)
        .enumerate()
        .map(|(k, ((positive, negative), expected))| SignatureCheck { k: k as u32, expected, positive, negative })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::evaluate;
    use crate::twistword::TwistWord;

    fn sig(w: &str, d: &str, g: u32) -> Vec<SignatureCheck> {
        signature_checks(&evaluate(&TwistWord::parse(w, g).unwrap()), &d.parse().unwrap()).unwrap()
    }

    #[test]
    fn torus() {
        // T_a T_b and its inverse sit in different rows of the genus-one table.
        let s = sig("T_a T_b", "(6,0;(1,2),(1,3),(1,6))", 1);
        assert!(s.iter().all(|c| c.positive == c.expected));
        let s = sig("T_a T_b", "(6,0;(1,2),(2,3),(5,6))", 1);
        assert!(s.iter().any(|c| c.positive != c.expected));
        for c in &s {
            assert_eq!(c.positive + c.negative, if c.k == 1 || c.k == 5 { 1 } else { 0 });
        }
    }

    #[test]
    fn multiplicities_sum_to_genus() {
        for g in 1..=4 {
            for d in crate::dataset::enumerate(g, None) {
                let m = holomorphic_multiplicities(&d).unwrap();
                assert_eq!(m.iter().sum::<u32>(), g, "{d}");
            }
        }
    }
}
