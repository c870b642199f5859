//! Coordinate-ascent search over measurement settings.
//!
//! Every inequality handled here is multilinear in the Bloch vectors of the
//! settings, so with all other settings held fixed the objective restricted
//! to one setting is `g . v` for a computable gradient `g`, and the exact
//! one-setting optimum is the unit vector along `g`. Sweeping the settings
//! in a fixed order is therefore monotone and converges fast; the angular
//! grid controlled by `resolution` only seeds the start points of the random
//! restarts so the ascent can escape poor basins.

use rand::Rng;

use crate::sampling;

use super::correlations::{CorrelationMatrix, CorrelationTensor3};

/// Knobs for the setting searches, including the seed that makes every
/// oracle deterministic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Angular steps per axis of the restart-seeding grid.
    pub resolution: usize,
    /// Coordinate-ascent sweeps per restart (ascent stops earlier once the
    /// value stalls).
    pub sweeps: usize,
    /// Number of seeded random restarts on top of the deterministic ones.
    pub random_restarts: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { resolution: 16, sweeps: 5, random_restarts: 3, seed: 0 }
    }
}

impl SearchOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

pub(crate) type Vec3 = [f64; 3];

fn norm(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn normalize(v: Vec3) -> Option<Vec3> {
    let n = norm(v);
    if n < 1e-14 {
        None
    } else {
        Some([v[0] / n, v[1] / n, v[2] / n])
    }
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Deterministic tie-break key: settings flattened to canonical angles.
fn angle_key(settings: &[Vec3]) -> Vec<f64> {
    settings
        .iter()
        .flat_map(|&v| {
            let theta = v[2].clamp(-1.0, 1.0).acos();
            let r = v[0].hypot(v[1]);
            let phi = if r < 1e-12 {
                0.0
            } else {
                let p = v[1].atan2(v[0]);
                if p < 0.0 {
                    p + 2.0 * std::f64::consts::PI
                } else {
                    p
                }
            };
            [theta, phi]
        })
        .collect()
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Grid nodes for restart seeding: `resolution` polar by `resolution`
/// azimuthal steps.
fn grid_nodes(resolution: usize) -> Vec<Vec3> {
    let res = resolution.max(2);
    let mut nodes = Vec::with_capacity(res * res);
    for i in 0..res {
        let theta = std::f64::consts::PI * i as f64 / (res - 1) as f64;
        for j in 0..res {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / res as f64;
            nodes.push([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]);
        }
    }
    nodes
}

/// Keep the best (value, settings) pair under a deterministic tie-break on
/// the serialized angles.
struct Best {
    value: f64,
    settings: Vec<Vec3>,
}

impl Best {
    fn new() -> Self {
        Self { value: f64::NEG_INFINITY, settings: Vec::new() }
    }

    fn offer(&mut self, value: f64, settings: &[Vec3]) {
        if value > self.value + 1e-12 {
            self.value = value;
            self.settings = settings.to_vec();
        } else if (value - self.value).abs() <= 1e-12
            && !self.settings.is_empty()
            && lex_less(&angle_key(settings), &angle_key(&self.settings))
        {
            self.settings = settings.to_vec();
        }
    }
}

/// CHSH objective `a1.T(b1+b2) + a2.T(b1-b2)` maximized by alternating exact
/// per-setting updates. Returns the maximum and the settings
/// `[a1, a2, b1, b2]`.
pub(crate) fn maximize_chsh(t: &CorrelationMatrix, opts: &SearchOptions) -> (f64, Vec<Vec3>) {
    let value = |s: &[Vec3]| -> f64 {
        t.bilinear(s[0], add(s[2], s[3])) + t.bilinear(s[1], sub(s[2], s[3]))
    };
    let ascend = |s: &mut Vec<Vec3>| {
        let mut last = f64::NEG_INFINITY;
        for _ in 0..opts.sweeps.max(1) * 10 {
            if let Some(v) = normalize(t.apply(add(s[2], s[3]))) {
                s[0] = v;
            }
            if let Some(v) = normalize(t.apply(sub(s[2], s[3]))) {
                s[1] = v;
            }
            if let Some(v) = normalize(t.apply_transpose(add(s[0], s[1]))) {
                s[2] = v;
            }
            if let Some(v) = normalize(t.apply_transpose(sub(s[0], s[1]))) {
                s[3] = v;
            }
            let now = value(s);
            if (now - last).abs() < 1e-14 {
                break;
            }
            last = now;
        }
    };

    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut starts: Vec<Vec<Vec3>> = vec![
        vec![[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [s2, 0.0, s2], [-s2, 0.0, s2]],
        vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [s2, s2, 0.0], [-s2, s2, 0.0]],
    ];
    let nodes = grid_nodes(opts.resolution);
    let mut rng = sampling::rng_from_seed(opts.seed);
    for _ in 0..opts.random_restarts {
        starts.push((0..4).map(|_| nodes[rng.gen_range(0..nodes.len())]).collect());
    }

    let mut best = Best::new();
    for mut s in starts {
        ascend(&mut s);
        best.offer(value(&s), &s);
    }
    (best.value, best.settings)
}

/// One product term of a tripartite inequality: `coeff * <O_A O_B O_C>`
/// where each party either measures one of its two settings or is left
/// unmeasured (identity).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Term {
    pub coeff: f64,
    pub slots: [Option<usize>; 3],
}

impl Term {
    pub const fn new(coeff: f64, a: Option<usize>, b: Option<usize>, c: Option<usize>) -> Self {
        Self { coeff, slots: [a, b, c] }
    }
}

fn pair_contract(t: &[[f64; 3]; 3], u: Vec3, v: Vec3) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += t[i][j] * u[i] * v[j];
        }
    }
    acc
}

/// Evaluate a term list at the given settings, laid out as
/// `[a0, a1, b0, b1, c0, c1]`.
pub(crate) fn tripartite_value(
    corr: &CorrelationTensor3,
    terms: &[Term],
    settings: &[Vec3],
) -> f64 {
    let setting = |party: usize, idx: usize| settings[2 * party + idx];
    let mut total = 0.0;
    for term in terms {
        let contribution = match term.slots {
            [Some(a), Some(b), Some(c)] => {
                corr.contract3(setting(0, a), setting(1, b), setting(2, c))
            }
            [Some(a), Some(b), None] => {
                pair_contract(corr.pair(0, 1), setting(0, a), setting(1, b))
            }
            [Some(a), None, Some(c)] => {
                pair_contract(corr.pair(0, 2), setting(0, a), setting(2, c))
            }
            [None, Some(b), Some(c)] => {
                pair_contract(corr.pair(1, 2), setting(1, b), setting(2, c))
            }
            _ => panic!("terms must involve at least two parties"),
        };
        total += term.coeff * contribution;
    }
    total
}

/// Gradient of the term list with respect to setting `idx` of `party`.
fn tripartite_gradient(
    corr: &CorrelationTensor3,
    terms: &[Term],
    settings: &[Vec3],
    party: usize,
    idx: usize,
) -> Vec3 {
    let setting = |p: usize, i: usize| settings[2 * p + i];
    let m = corr.entries();
    let mut g = [0.0; 3];
    for term in terms {
        if term.slots[party] != Some(idx) {
            continue;
        }
        match (party, term.slots) {
            (0, [_, Some(b), Some(c)]) => {
                let (vb, vc) = (setting(1, b), setting(2, c));
                for i in 0..3 {
                    let mut acc = 0.0;
                    for j in 0..3 {
                        for k in 0..3 {
                            acc += m[i][j][k] * vb[j] * vc[k];
                        }
                    }
                    g[i] += term.coeff * acc;
                }
            }
            (1, [Some(a), _, Some(c)]) => {
                let (va, vc) = (setting(0, a), setting(2, c));
                for j in 0..3 {
                    let mut acc = 0.0;
                    for i in 0..3 {
                        for k in 0..3 {
                            acc += m[i][j][k] * va[i] * vc[k];
                        }
                    }
                    g[j] += term.coeff * acc;
                }
            }
            (2, [Some(a), Some(b), _]) => {
                let (va, vb) = (setting(0, a), setting(1, b));
                for k in 0..3 {
                    let mut acc = 0.0;
                    for i in 0..3 {
                        for j in 0..3 {
                            acc += m[i][j][k] * va[i] * vb[j];
                        }
                    }
                    g[k] += term.coeff * acc;
                }
            }
            (0, [_, Some(b), None]) => {
                let t = corr.pair(0, 1);
                let vb = setting(1, b);
                for i in 0..3 {
                    g[i] += term.coeff * (0..3).map(|j| t[i][j] * vb[j]).sum::<f64>();
                }
            }
            (0, [_, None, Some(c)]) => {
                let t = corr.pair(0, 2);
                let vc = setting(2, c);
                for i in 0..3 {
                    g[i] += term.coeff * (0..3).map(|j| t[i][j] * vc[j]).sum::<f64>();
                }
            }
            (1, [Some(a), _, None]) => {
                let t = corr.pair(0, 1);
                let va = setting(0, a);
                for j in 0..3 {
                    g[j] += term.coeff * (0..3).map(|i| t[i][j] * va[i]).sum::<f64>();
                }
            }
            (1, [None, _, Some(c)]) => {
                let t = corr.pair(1, 2);
                let vc = setting(2, c);
                for j in 0..3 {
                    g[j] += term.coeff * (0..3).map(|k| t[j][k] * vc[k]).sum::<f64>();
                }
            }
            (2, [Some(a), None, _]) => {
                let t = corr.pair(0, 2);
                let va = setting(0, a);
                for k in 0..3 {
                    g[k] += term.coeff * (0..3).map(|i| t[i][k] * va[i]).sum::<f64>();
                }
            }
            (2, [None, Some(b), _]) => {
                let t = corr.pair(1, 2);
                let vb = setting(1, b);
                for k in 0..3 {
                    g[k] += term.coeff * (0..3).map(|j| t[j][k] * vb[j]).sum::<f64>();
                }
            }
            _ => {}
        }
    }
    g
}

/// Maximize a tripartite term list over all six settings. Returns the
/// maximum and the settings `[a0, a1, b0, b1, c0, c1]`.
pub(crate) fn maximize_tripartite(
    corr: &CorrelationTensor3,
    terms: &[Term],
    extra_starts: &[Vec<Vec3>],
    opts: &SearchOptions,
) -> (f64, Vec<Vec3>) {
    let ascend = |s: &mut Vec<Vec3>| {
        let mut last = f64::NEG_INFINITY;
        for _ in 0..opts.sweeps.max(1) * 10 {
            for party in 0..3 {
                for idx in 0..2 {
                    let g = tripartite_gradient(corr, terms, s, party, idx);
                    if let Some(v) = normalize(g) {
                        s[2 * party + idx] = v;
                    }
                }
            }
            let now = tripartite_value(corr, terms, s);
            if (now - last).abs() < 1e-14 {
                break;
            }
            last = now;
        }
    };

    let z: Vec3 = [0.0, 0.0, 1.0];
    let x: Vec3 = [1.0, 0.0, 0.0];
    let y: Vec3 = [0.0, 1.0, 0.0];
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut starts: Vec<Vec<Vec3>> = vec![
        vec![z, x, z, x, z, x],
        vec![x, y, x, y, x, y],
        // planar spread with the 45-degree pair that certifies GHZ-type states
        vec![z, x, z, x, [s2, 0.0, -s2], [s2, 0.0, s2]],
        vec![[s2, s2, 0.0], [s2, -s2, 0.0], x, y, [s2, s2, 0.0], [s2, -s2, 0.0]],
    ];
    starts.extend_from_slice(extra_starts);
    let nodes = grid_nodes(opts.resolution);
    let mut rng = sampling::rng_from_seed(opts.seed);
    for _ in 0..opts.random_restarts {
        starts.push((0..6).map(|_| nodes[rng.gen_range(0..nodes.len())]).collect());
    }

    let mut best = Best::new();
    for mut s in starts {
        ascend(&mut s);
        best.offer(tripartite_value(corr, terms, &s), &s);
    }
    (best.value, best.settings)
}
