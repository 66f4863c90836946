//! Conversion of tropical rational functions to equivalent ReLU networks.
//!
//! The maximum of two scalar networks `nu`, `mu` is itself a network one
//! layer deeper:
//!
//! ```text
//! max(nu, mu) = [1 1 -1] · relu([nu - mu; mu; -mu])
//! ```
//!
//! Applying this over a balanced binary tree of monomials turns a tropical
//! polynomial into a network whose hidden widths halve layer by layer, and
//! a rational function is the difference of two such trees evaluated in
//! parallel. The conversion is exact: forward evaluation reproduces
//! `p(c·x) - q(c·x)` up to floating-point roundoff.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratfit::TropicalRational;
use crate::poly::TropicalPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    None,
}

/// One affine layer `x -> W x + b`, optionally followed by ReLU.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    /// Row-major weights: `weights[r]` maps the previous layer to output `r`.
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
    pub activation: Activation,
}

impl Layer {
    pub fn out_dim(&self) -> usize {
        self.bias.len()
    }

    pub fn in_dim(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }
}

/// A scalar-output feed-forward ReLU network.
///
/// Hidden layers use ReLU, the final layer is affine with a single output,
/// and inputs are multiplied by `input_scale` before the first layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReluNetwork {
    pub input_dim: usize,
    pub input_scale: f64,
    pub layers: Vec<Layer>,
}

impl ReluNetwork {
    /// Builds and validates a network.
    pub fn new(input_dim: usize, input_scale: f64, layers: Vec<Layer>) -> Result<Self> {
        let net = ReluNetwork {
            input_dim,
            input_scale,
            layers,
        };
        net.validate()?;
        Ok(net)
    }

    /// Checks the layer chain: matching dimensions, finite parameters,
    /// ReLU on hidden layers, a single affine output.
    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 {
            return Err(Error::Shape("input dimension must be >= 1".into()));
        }
        if !(self.input_scale.is_finite() && self.input_scale > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "input_scale must be a positive finite number, got {}",
                self.input_scale
            )));
        }
        if self.layers.is_empty() {
            return Err(Error::Shape("network needs at least one layer".into()));
        }
        let mut width = self.input_dim;
        let last = self.layers.len() - 1;
        for (idx, layer) in self.layers.iter().enumerate() {
            if layer.weights.len() != layer.bias.len() || layer.weights.is_empty() {
                return Err(Error::Shape(format!(
                    "layer {idx}: {} weight rows vs {} biases",
                    layer.weights.len(),
                    layer.bias.len()
                )));
            }
            for row in &layer.weights {
                if row.len() != width {
                    return Err(Error::Shape(format!(
                        "layer {idx}: weight row of length {}, expected {width}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|v| !v.is_finite()) {
                    return Err(Error::NotFinite(bad));
                }
            }
            if let Some(&bad) = layer.bias.iter().find(|v| !v.is_finite()) {
                return Err(Error::NotFinite(bad));
            }
            let expect = if idx == last {
                Activation::None
            } else {
                Activation::Relu
            };
            if layer.activation != expect {
                return Err(Error::Shape(format!(
                    "layer {idx}: expected activation {expect:?}"
                )));
            }
            width = layer.out_dim();
        }
        if width != 1 {
            return Err(Error::Shape(format!(
                "network output dimension is {width}, expected 1"
            )));
        }
        Ok(())
    }

    /// Widths of the hidden layers, input to output.
    pub fn hidden_widths(&self) -> Vec<usize> {
        self.layers[..self.layers.len() - 1]
            .iter()
            .map(Layer::out_dim)
            .collect()
    }

    /// Forward evaluation; `x` must have length `input_dim`.
    pub fn forward(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.input_dim, "input dimension mismatch");
        let mut cur: Vec<f64> = x.iter().map(|v| self.input_scale * v).collect();
        for layer in &self.layers {
            let mut next = Vec::with_capacity(layer.out_dim());
            for (row, &b) in layer.weights.iter().zip(&layer.bias) {
                let mut acc = b;
                for (w, v) in row.iter().zip(&cur) {
                    acc += w * v;
                }
                next.push(match layer.activation {
                    Activation::Relu => acc.max(0.0),
                    Activation::None => acc,
                });
            }
            cur = next;
        }
        cur[0]
    }

    /// JSON document consumable by external training frameworks.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let net: ReluNetwork = serde_json::from_str(text)?;
        net.validate()?;
        Ok(net)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?)
            .map_err(|e| Error::io(path.display().to_string(), e))
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        ReluNetwork::from_json(&text)
    }
}

/// A net's scalar output written as an affine functional of a shared trunk.
struct StackedHeads {
    trunk: Vec<Layer>,
    head_a: (Vec<f64>, f64),
    head_b: (Vec<f64>, f64),
}

fn check_combinable(a: &ReluNetwork, b: &ReluNetwork) -> Result<()> {
    a.validate()?;
    b.validate()?;
    if a.input_dim != b.input_dim {
        return Err(Error::Shape(format!(
            "input dimensions differ: {} vs {}",
            a.input_dim, b.input_dim
        )));
    }
    if a.input_scale != b.input_scale {
        return Err(Error::Shape(format!(
            "input scales differ: {} vs {}",
            a.input_scale, b.input_scale
        )));
    }
    Ok(())
}

/// Adds `extra` layers that pass the scalar output through unchanged,
/// using `v = relu(v) - relu(-v)`.
fn deepen(net: &ReluNetwork, extra: usize) -> ReluNetwork {
    let mut net = net.clone();
    for _ in 0..extra {
        let last = net.layers.pop().expect("validated networks are non-empty");
        let row = last.weights.into_iter().next().expect("single output row");
        let bias = last.bias[0];
        let neg_row: Vec<f64> = row.iter().map(|w| -w).collect();
        net.layers.push(Layer {
            weights: vec![row, neg_row],
            bias: vec![bias, -bias],
            activation: Activation::Relu,
        });
        net.layers.push(Layer {
            weights: vec![vec![1.0, -1.0]],
            bias: vec![0.0],
            activation: Activation::None,
        });
    }
    net
}

/// Runs two equal-depth networks in parallel: hidden layers are stacked
/// (block-diagonally after the first), and each net's final affine output
/// is returned as a head over the combined top layer.
fn stack_with_heads(a: &ReluNetwork, b: &ReluNetwork) -> StackedHeads {
    let depth = a.layers.len();
    debug_assert_eq!(depth, b.layers.len());
    let hidden = depth - 1;

    let mut trunk = Vec::with_capacity(hidden);
    for idx in 0..hidden {
        let la = &a.layers[idx];
        let lb = &b.layers[idx];
        let mut weights = Vec::with_capacity(la.out_dim() + lb.out_dim());
        if idx == 0 {
            // Both nets read the raw input.
            weights.extend(la.weights.iter().cloned());
            weights.extend(lb.weights.iter().cloned());
        } else {
            let wa = la.in_dim();
            let wb = lb.in_dim();
            for row in &la.weights {
                let mut r = row.clone();
                r.resize(wa + wb, 0.0);
                weights.push(r);
            }
            for row in &lb.weights {
                let mut r = vec![0.0; wa];
                r.extend_from_slice(row);
                weights.push(r);
            }
        }
        let mut bias = la.bias.clone();
        bias.extend_from_slice(&lb.bias);
        trunk.push(Layer {
            weights,
            bias,
            activation: Activation::Relu,
        });
    }

    let fin_a = &a.layers[depth - 1];
    let fin_b = &b.layers[depth - 1];
    if hidden == 0 {
        // Affine-only nets share the input as their top layer.
        StackedHeads {
            trunk,
            head_a: (fin_a.weights[0].clone(), fin_a.bias[0]),
            head_b: (fin_b.weights[0].clone(), fin_b.bias[0]),
        }
    } else {
        let wa = fin_a.in_dim();
        let wb = fin_b.in_dim();
        let mut ra = fin_a.weights[0].clone();
        ra.resize(wa + wb, 0.0);
        let mut rb = vec![0.0; wa];
        rb.extend_from_slice(&fin_b.weights[0]);
        StackedHeads {
            trunk,
            head_a: (ra, fin_a.bias[0]),
            head_b: (rb, fin_b.bias[0]),
        }
    }
}

fn equalize(a: &ReluNetwork, b: &ReluNetwork) -> (ReluNetwork, ReluNetwork) {
    let (da, db) = (a.layers.len(), b.layers.len());
    if da < db {
        (deepen(a, db - da), b.clone())
    } else if db < da {
        (a.clone(), deepen(b, da - db))
    } else {
        (a.clone(), b.clone())
    }
}

/// Network computing `max(nu(x), mu(x))`, one layer deeper than the deeper
/// input.
pub fn max_combine(nu: &ReluNetwork, mu: &ReluNetwork) -> Result<ReluNetwork> {
    check_combinable(nu, mu)?;
    let (a, b) = equalize(nu, mu);
    let StackedHeads {
        mut trunk,
        head_a: (ra, ca),
        head_b: (rb, cb),
    } = stack_with_heads(&a, &b);

    let diff: Vec<f64> = ra.iter().zip(&rb).map(|(x, y)| x - y).collect();
    let neg_rb: Vec<f64> = rb.iter().map(|w| -w).collect();
    trunk.push(Layer {
        weights: vec![diff, rb, neg_rb],
        bias: vec![ca - cb, cb, -cb],
        activation: Activation::Relu,
    });
    trunk.push(Layer {
        weights: vec![vec![1.0, 1.0, -1.0]],
        bias: vec![0.0],
        activation: Activation::None,
    });
    ReluNetwork::new(nu.input_dim, nu.input_scale, trunk)
}

/// Network computing `nu(x) - mu(x)` at the depth of the deeper input.
fn difference_network(nu: &ReluNetwork, mu: &ReluNetwork) -> Result<ReluNetwork> {
    check_combinable(nu, mu)?;
    let (a, b) = equalize(nu, mu);
    let StackedHeads {
        mut trunk,
        head_a: (ra, ca),
        head_b: (rb, cb),
    } = stack_with_heads(&a, &b);

    let diff: Vec<f64> = ra.iter().zip(&rb).map(|(x, y)| x - y).collect();
    trunk.push(Layer {
        weights: vec![diff],
        bias: vec![ca - cb],
        activation: Activation::None,
    });
    ReluNetwork::new(nu.input_dim, nu.input_scale, trunk)
}

fn monomial_network(dim: usize, exponent: &[u32], coeff: f64) -> ReluNetwork {
    ReluNetwork {
        input_dim: dim,
        input_scale: 1.0,
        layers: vec![Layer {
            weights: vec![exponent.iter().map(|&w| w as f64).collect()],
            bias: vec![coeff],
            activation: Activation::None,
        }],
    }
}

/// Network computing a tropical polynomial, built as a balanced binary
/// max tree over its finite monomials.
pub fn polynomial_to_relu(poly: &TropicalPolynomial) -> Result<ReluNetwork> {
    let monomials = poly.finite_monomials();
    if monomials.is_empty() {
        return Err(Error::NoFiniteCoefficient);
    }
    let dim = poly.exponents().dim();
    let mut nodes: Vec<ReluNetwork> = monomials
        .iter()
        .map(|(w, c)| monomial_network(dim, w, *c))
        .collect();
    while nodes.len() > 1 {
        let mut next = Vec::with_capacity(nodes.len().div_ceil(2));
        let mut iter = nodes.into_iter();
        while let Some(a) = iter.next() {
            match iter.next() {
                Some(b) => next.push(max_combine(&a, &b)?),
                None => next.push(a),
            }
        }
        nodes = next;
    }
    Ok(nodes.pop().expect("at least one monomial"))
}

/// Network computing `f(x) = p(c·x) - q(c·x)`: the numerator and
/// denominator max trees run in parallel and are subtracted by the final
/// affine layer; the model's scale becomes the network's `input_scale`.
pub fn rational_to_relu(f: &TropicalRational) -> Result<ReluNetwork> {
    let p_net = polynomial_to_relu(f.numerator())?;
    let q_net = polynomial_to_relu(f.denominator())?;
    let mut net = difference_network(&p_net, &q_net)?;
    net.input_scale = f.scale();
    net.validate()?;
    Ok(net)
}

/// Forward evaluation of a network at one point.
pub fn relu_forward(net: &ReluNetwork, x: &[f64]) -> f64 {
    net.forward(x)
}
