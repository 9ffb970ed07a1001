//! Gauss–Hermite rules.
//!
//! [`GaussHermite`] integrates `∫ e^{-x²} f(x) dx` over the real line. The
//! tensor-product [`ComplexGaussianRule`] turns it into an expectation over
//! `Z ~ CN(0, 1)`: with `Z = u + iv` and `u, v ~ N(0, 1/2)`,
//! `E f(Z) = (1/π) ∬ e^{-u²-v²} f(u + iv) du dv`.

use std::f64::consts::PI;

use crate::{Error, Result, C64};

/// One-dimensional Gauss–Hermite rule for the weight `e^{-x²}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermite {
    /// Nodes and weights of the `order`-point rule (Newton iteration on the
    /// orthonormal Hermite recurrence). Nodes come out ascending and exactly
    /// symmetric about zero.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > 200 {
            return Err(Error::InvalidConfig(format!(
                "Gauss-Hermite order {order} out of range"
            )));
        }
        let n = order;
        let pim4 = PI.powf(-0.25);
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        let mut z = 0.0f64;
        for i in 0..n.div_ceil(2) {
            z = match i {
                0 => {
                    let t = (2 * n + 1) as f64;
                    t.sqrt() - 1.85575 * t.powf(-0.16667)
                }
                1 => z - 1.14 * (n as f64).powf(0.426) / z,
                2 => 1.86 * z - 0.86 * x[0],
                3 => 1.91 * z - 0.91 * x[1],
                _ => 2.0 * z - x[i - 2],
            };
            let mut pp = 0.0;
            for _ in 0..100 {
                let (p1, p2) = hermite_orthonormal(n, z, pim4);
                pp = (2.0 * n as f64).sqrt() * p2;
                let step = p1 / pp;
                z -= step;
                if step.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            // Refresh the derivative at the converged node.
            let (_, p2) = hermite_orthonormal(n, z, pim4);
            pp = if p2 != 0.0 { (2.0 * n as f64).sqrt() * p2 } else { pp };
            if n % 2 == 1 && i == n / 2 {
                z = 0.0;
            }
            x[i] = z;
            x[n - 1 - i] = -z;
            w[i] = 2.0 / (pp * pp);
            w[n - 1 - i] = w[i];
        }
        x.reverse();
        w.reverse();
        Ok(Self { nodes: x, weights: w })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Returns `(p_n(z), p_{n-1}(z))` of the orthonormal Hermite recurrence.
fn hermite_orthonormal(n: usize, z: f64, pim4: f64) -> (f64, f64) {
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

/// Tensor-product rule for expectations over `Z ~ CN(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGaussianRule {
    nodes: Vec<C64>,
    weights: Vec<f64>,
}

impl ComplexGaussianRule {
    /// `order²` nodes; the weights sum to one.
    pub fn new(order: usize) -> Result<Self> {
        let rule = GaussHermite::new(order)?;
        let mut nodes = Vec::with_capacity(order * order);
        let mut weights = Vec::with_capacity(order * order);
        for (&u, &wu) in rule.nodes().iter().zip(rule.weights()) {
            for (&v, &wv) in rule.nodes().iter().zip(rule.weights()) {
                nodes.push(C64::new(u, v));
                weights.push(wu * wv / PI);
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn expectation(&self, f: impl Fn(C64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&z, &w)| w * f(z)).sum()
    }
}
