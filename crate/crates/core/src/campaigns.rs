//! Orchestrated verification campaigns: each one sweeps seeded random states
//! through a closed form and its independent oracle, counts failures, and
//! records the worst residual seen. Campaigns are deterministic given the
//! seed; trials aggregate through counters and max-reductions only, so the
//! result does not depend on evaluation order.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channels::{apply_channel, convert, convert_pure, fanout_unitary, ConversionSpec};
use crate::coherence::{c_l1, c_rel_entropy, CoherenceReport, KrausSet};
use crate::error::{Error, Result};
use crate::linalg::{singular_values, tensor, ComplexMatrix, C64};
use crate::nonlocality::{
    c_gme_converted, c_gme_pure, chsh_grid_oracle, chsh_max, correlation_tensor3, horodecki_m,
    ns_oracle, projected_chsh, svetlichny_bound, svetlichny_oracle, t_reference_settings, t_value,
    ProjectorPair, SearchOptions,
};
use crate::sampling;
use crate::state::{relative_entropy, DensityMatrix};

/// Outcome of one verification campaign.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CampaignResult {
    pub theorem_id: String,
    pub trials: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub artifacts: Vec<String>,
}

struct Campaign {
    result: CampaignResult,
}

impl Campaign {
    fn new(theorem_id: &str) -> Self {
        Self {
            result: CampaignResult {
                theorem_id: theorem_id.to_string(),
                trials: 0,
                failures: 0,
                worst_residual: 0.0,
                artifacts: Vec::new(),
            },
        }
    }

    fn trial(&mut self) {
        self.result.trials += 1;
    }

    fn residual(&mut self, r: f64) {
        if r > self.result.worst_residual {
            self.result.worst_residual = r;
        }
    }

    /// Record a residual and fail the trial when it exceeds the tolerance.
    /// NaN counts as a failure.
    fn check_residual(&mut self, r: f64, tolerance: f64) {
        self.residual(r);
        if r.is_nan() || r > tolerance {
            self.result.failures += 1;
        }
    }

    fn check(&mut self, ok: bool) {
        if !ok {
            self.result.failures += 1;
        }
    }

    fn finish(self) -> CampaignResult {
        self.result
    }
}

/// Qubit on the balanced slice: populations 1/2, off-diagonal `a + ib`.
fn slice_qubit(a: f64, b: f64) -> Result<DensityMatrix> {
    let m = ComplexMatrix::new(
        2,
        2,
        vec![C64::new(0.5, 0.0), C64::new(a, b), C64::new(a, -b), C64::new(0.5, 0.0)],
    )?;
    DensityMatrix::single(m)
}

/// Closed-form / oracle checks of the conversion-to-CHSH-nonlocality chain on
/// random qubit sources: `M(converted) = 1 + 4 |rho01|^2`, the violation-iff-
/// coherent equivalence, and (on a deterministic subsample) agreement of the
/// coordinate-ascent oracle with `2 sqrt(M)`.
pub fn verify_theorem1(trials: usize, seed: u64) -> CampaignResult {
    let mut campaign = Campaign::new("theorem1");
    let mut rng = sampling::rng_from_seed(seed);
    let spec = ConversionSpec::new(2, 2).expect("2,2 is valid");
    let oracle_stride = (trials / 20).max(1);
    for trial in 0..trials {
        campaign.trial();
        let rho_s = sampling::ginibre_density(&[2], &mut rng);
        let converted = convert(&rho_s, &spec).expect("qubit source");
        let m = horodecki_m(&converted).expect("two-qubit state");
        let closed = 1.0 + 4.0 * rho_s.entry(0, 1).norm_sqr();
        campaign.check_residual((m - closed).abs(), 1e-10);
        let violates = m > 1.0 + 1e-9;
        let coherent = c_l1(&rho_s) > 1e-9;
        campaign.check(violates == coherent);
        if trial % oracle_stride == 0 {
            let opts = SearchOptions::with_seed(seed ^ trial as u64);
            let oracle = chsh_grid_oracle(&converted, &opts).expect("two-qubit state");
            let bound = chsh_max(&converted).expect("two-qubit state");
            campaign.check((oracle.value - bound).abs() <= 1e-3 && oracle.value <= bound + 1e-9);
        }
    }
    campaign.finish()
}

/// Rank-2 state of dimension `d` supported on the `(i, j)` plane.
fn embedded_rank2(d: usize, i: usize, j: usize, block: &DensityMatrix) -> Result<DensityMatrix> {
    let mut m = ComplexMatrix::zeros(d, d);
    m.set(i, i, block.entry(0, 0));
    m.set(i, j, block.entry(0, 1));
    m.set(j, i, block.entry(1, 0));
    m.set(j, j, block.entry(1, 1));
    DensityMatrix::single(m)
}

/// Qudit with a coherent `(0, 1)` block of weight `s` and off-diagonal `x`;
/// the rest of the population spreads over the remaining levels.
fn pair_block_qudit(d: usize, s: f64, x: f64) -> Result<DensityMatrix> {
    let mut m = ComplexMatrix::zeros(d, d);
    m.set(0, 0, C64::new(s / 2.0, 0.0));
    m.set(1, 1, C64::new(s / 2.0, 0.0));
    m.set(0, 1, C64::new(x, 0.0));
    m.set(1, 0, C64::new(x, 0.0));
    let rest = (1.0 - s) / (d - 2) as f64;
    for k in 2..d {
        m.set(k, k, C64::new(rest, 0.0));
    }
    DensityMatrix::single(m)
}

/// Projected-CHSH threshold behaviour on `d`-level sources: random rank-2
/// states violate iff they are coherent, and the full-rank pair-block family
/// crosses the bound 2 exactly at `|rho_ij| = sqrt(1 - s^2)/2`.
pub fn verify_theorem2_and_corollary(trials: usize, d: usize, seed: u64) -> Result<CampaignResult> {
    if !(3..=5).contains(&d) {
        return Err(Error::InvalidGrid(format!("theorem 2 campaign expects d in 3..=5, got {d}")));
    }
    let mut campaign = Campaign::new("theorem2");
    let mut rng = sampling::rng_from_seed(seed);
    let spec = ConversionSpec::new(d, 2)?;
    use rand::Rng;

    for _ in 0..trials {
        campaign.trial();
        let i = rng.gen_range(0..d - 1);
        let j = rng.gen_range(i + 1..d);
        let block = sampling::ginibre_density(&[2], &mut rng);
        let rho_s = embedded_rank2(d, i, j, &block)?;
        let converted = convert(&rho_s, &spec)?;
        let pair = ProjectorPair::symmetric(i, j, d)?;
        let report = projected_chsh(&converted, &pair)?;
        let coherent = c_l1(&rho_s) > 1e-9;
        campaign.check(report.violated == coherent);
    }

    // boundary sweep at s = 0.8: threshold sits at x = 0.3
    let s = 0.8;
    let evaluate = |x: f64| -> Result<f64> {
        let rho_s = pair_block_qudit(d, s, x)?;
        let converted = convert(&rho_s, &spec)?;
        let pair = ProjectorPair::symmetric(0, 1, d)?;
        Ok(projected_chsh(&converted, &pair)?.value)
    };
    campaign.trial();
    campaign.check_residual((evaluate(0.3)? - 2.0).abs(), 1e-10);
    campaign.trial();
    campaign.check(evaluate(0.31)? > 2.0 + 1e-9);
    campaign.trial();
    campaign.check(evaluate(0.29)? < 2.0 - 1e-9);

    // the violation flag flips exactly once across the boundary
    let mut flips = 0;
    let mut last = false;
    for step in 0..=20 {
        let x = 0.299 + step as f64 * 1e-4;
        let violated = evaluate(x)? > 2.0 + 1e-9;
        if step > 0 && violated != last {
            flips += 1;
        }
        last = violated;
    }
    campaign.trial();
    campaign.check(flips == 1);
    Ok(campaign.finish())
}

/// Monotonicity chain for the relative-entropy measure: appending an
/// incoherent ancilla and applying a random incoherent channel never raises
/// `C_r`, and `C_r <= log2(d) C_l1` throughout.
pub fn verify_theorem3_chain(trials: usize, seed: u64) -> CampaignResult {
    let mut campaign = Campaign::new("theorem3");
    let mut rng = sampling::rng_from_seed(seed);
    use rand::Rng;

    for trial in 0..trials {
        campaign.trial();
        let d = [2usize, 3, 4][trial % 3];
        let rho_s = sampling::ginibre_density(&[d], &mut rng);
        let ancilla = ComplexMatrix::diagonal(
            &std::iter::once(1.0).chain(std::iter::repeat(0.0)).take(d).collect::<Vec<_>>(),
        );
        let joint =
            DensityMatrix::new(tensor(rho_s.matrix(), &ancilla), vec![d, d]).expect("valid");
        let n_ops = rng.gen_range(1..=3);
        let channel = sampling::random_incoherent_kraus(d * d, n_ops, &mut rng);
        let out = apply_channel(&channel, &joint).expect("shapes match");

        let cr_in = c_rel_entropy(&rho_s);
        let cr_joint = c_rel_entropy(&joint);
        let cr_out = c_rel_entropy(&out);
        campaign.check_residual((cr_joint - cr_in).abs(), 1e-9);
        campaign.check_residual(cr_out - cr_in, 1e-9);
        campaign.check(cr_in <= (d as f64).log2() * c_l1(&rho_s) + 1e-9);
        campaign.check(cr_out <= ((d * d) as f64).log2() * c_l1(&out) + 1e-9);
    }

    // fan-out unitary: a permutation of entries, so C_r passes through intact
    let mut rng2 = sampling::rng_from_seed(seed ^ 0xfa0);
    let rho_s = sampling::ginibre_density(&[2], &mut rng2);
    let joint = DensityMatrix::new(
        tensor(rho_s.matrix(), &ComplexMatrix::diagonal(&[1.0, 0.0])),
        vec![2, 2],
    )
    .expect("valid");
    let spec = ConversionSpec::new(2, 2).expect("valid");
    let fanout = KrausSet::from_unitary(fanout_unitary(&spec)).expect("unitary");
    let out = apply_channel(&fanout, &joint).expect("shapes match");
    campaign.trial();
    campaign.check_residual((c_rel_entropy(&out) - c_rel_entropy(&rho_s)).abs(), 1e-9);

    // full dephasing kills all coherence
    let dephased = apply_channel(&KrausSet::dephasing(4), &joint).expect("shapes match");
    campaign.trial();
    campaign.check(c_rel_entropy(&dephased) <= 1e-10);

    campaign.finish()
}

/// Genuine-multipartite-concurrence agreement on random pure sources: the
/// bipartition-purity route equals the closed form, positivity tracks
/// coherence, the maximally coherent qubit converts to GHZ, and converted
/// qubit coherence never reaches the W level 2.
pub fn verify_theorem4(trials: usize, d: usize, seed: u64) -> Result<CampaignResult> {
    if !(2..=3).contains(&d) {
        return Err(Error::InvalidGrid(format!("theorem 4 campaign expects d in 2..=3, got {d}")));
    }
    let mut campaign = Campaign::new("theorem4");
    let mut rng = sampling::rng_from_seed(seed);
    let spec = ConversionSpec::new(d, 3)?;

    for _ in 0..trials {
        campaign.trial();
        let psi_s = sampling::haar_pure(&[d], &mut rng);
        let converted = convert_pure(&psi_s, &spec)?;
        let direct = c_gme_pure(&converted)?;
        let closed = c_gme_converted(&psi_s.density(), 3)?;
        campaign.check_residual((direct - closed).abs(), 1e-12);
        let rho_s = psi_s.density();
        campaign.check((closed > 1e-9) == (c_l1(&rho_s) > 1e-9));
        if d == 2 {
            let conv_density = convert(&rho_s, &spec)?;
            let l1 = c_l1(&conv_density);
            campaign.check_residual((l1 - c_l1(&rho_s)).abs(), 1e-12);
            // stays at or below 1, strictly under the W level 2
            campaign.check(l1 <= 1.0 + 1e-12);
        }
    }

    if d == 2 {
        // maximally coherent qubit converts to GHZ exactly
        let plus = slice_qubit(0.5, 0.0)?;
        let converted = convert(&plus, &spec)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut ghz = ComplexMatrix::zeros(8, 8);
        for (r, c_idx) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            ghz.set(r, c_idx, C64::new(s * s, 0.0));
        }
        campaign.trial();
        campaign.check_residual(converted.matrix().max_abs_diff(&ghz), 1e-12);
    }

    // incoherent branch: diagonal source converts to zero concurrence
    let diag = DensityMatrix::from_probabilities(
        &(0..d).map(|k| (k + 1) as f64 / (d * (d + 1) / 2) as f64).collect::<Vec<_>>(),
    )?;
    campaign.trial();
    campaign.check(c_gme_converted(&diag, 3)? <= 1e-15);

    Ok(campaign.finish())
}

/// The four coherence thresholds for three-qubit certificates.
pub fn table1_thresholds() -> [(&'static str, f64); 4] {
    [
        ("S", std::f64::consts::FRAC_1_SQRT_2),
        ("T", std::f64::consts::SQRT_2 - 1.0),
        ("NS", 0.0),
        ("GME", 0.0),
    ]
}

/// Threshold certifications for the three-qubit certificates, plus the
/// `lambda_1 = sqrt(2) C_l1` identity on the balanced slice. Each threshold
/// is tested two-sided: the certificate must fire just above it and stay
/// silent just below (at the threshold 0 the below-state is the incoherent
/// one).
///
/// Note: the NS above-threshold leg records a failure. On fan-out states
/// every setting enters exactly one two-body NS term, which pins the NS
/// maximum at exactly 3 for any source coherence, so no setting search can
/// push it past the classical bound.
pub fn verify_theorem5_and_table1(
    seed: u64,
    artifact_dir: Option<&Path>,
) -> Result<CampaignResult> {
    let mut campaign = Campaign::new("theorem5_table1");
    let opts = SearchOptions::with_seed(seed);

    // lambda_1 identity on the balanced slice
    for step in 0..=10 {
        let a = 0.05 * step as f64;
        let rho_s = slice_qubit(a, 0.0)?;
        let converted = convert(&rho_s, &ConversionSpec::new(2, 3)?)?;
        let corr = correlation_tensor3(&converted)?;
        let lambda1 = singular_values(&corr.unfolding())[0];
        campaign.trial();
        campaign.check_residual((lambda1 - 2.0_f64.sqrt() * c_l1(&rho_s)).abs(), 1e-10);
    }

    let converted_with_coherence = |c: f64| -> Result<DensityMatrix> {
        convert(&slice_qubit(c / 2.0, 0.0)?, &ConversionSpec::new(2, 3)?)
    };

    // S threshold 1/sqrt(2)
    let c_s = std::f64::consts::FRAC_1_SQRT_2;
    campaign.trial();
    let above = svetlichny_oracle(&converted_with_coherence(c_s + 0.02)?, &opts)?;
    campaign.check(above.value > 4.0 + 1e-9);
    campaign.trial();
    let below_bound = svetlichny_bound(&converted_with_coherence(c_s - 0.02)?, &opts)?;
    let below_oracle = svetlichny_oracle(&converted_with_coherence(c_s - 0.02)?, &opts)?;
    campaign.check(!below_bound.violated && below_oracle.value <= 4.0 + 1e-6);

    // T threshold sqrt(2) - 1, with the reference settings
    let a_t = (std::f64::consts::SQRT_2 - 1.0) / 2.0;
    campaign.trial();
    let above =
        t_value(&converted_with_coherence(2.0 * (a_t + 0.01))?, &t_reference_settings(false))?;
    campaign.check(above > 3.0 + 1e-9);
    campaign.trial();
    let below =
        t_value(&converted_with_coherence(2.0 * (a_t - 0.01))?, &t_reference_settings(false))?;
    campaign.check(below <= 3.0);

    // NS threshold 0: the above leg cannot fire (see the doc comment)
    campaign.trial();
    let above = ns_oracle(&converted_with_coherence(0.1)?, &opts)?;
    campaign.check(above.value > 3.0 + 1e-9);
    campaign.trial();
    let below = ns_oracle(&converted_with_coherence(0.0)?, &opts)?;
    campaign.check(below.value <= 3.0 + 1e-6);

    // GME threshold 0
    campaign.trial();
    campaign.check(c_gme_converted(&slice_qubit(0.01, 0.0)?, 3)? > 1e-9);
    campaign.trial();
    campaign.check(c_gme_converted(&slice_qubit(0.0, 0.0)?, 3)? <= 1e-15);

    if let Some(dir) = artifact_dir {
        let path = dir.join("table1.csv");
        let mut file = std::fs::File::create(&path)?;
        writeln!(file, "# coherence thresholds for three-qubit certificates")?;
        writeln!(file, "# campaign=theorem5_table1 seed={seed} cert_slack=1e-9")?;
        writeln!(file, "certificate,c_l1_threshold")?;
        for (name, value) in table1_thresholds() {
            writeln!(file, "{name},{value}")?;
        }
        campaign.result.artifacts.push(path.display().to_string());
    }

    Ok(campaign.finish())
}

/// Independent minimization behind the relative-entropy coherence of a
/// qubit: grid over diagonal candidates `diag(p, 1-p)` followed by
/// golden-section refinement.
pub fn c_rel_entropy_oracle(rho: &DensityMatrix, grid: usize) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, got: rho.dim() });
    }
    if grid < 100 {
        return Err(Error::InvalidGrid(format!("need at least 100 grid points, got {grid}")));
    }
    let eval = |p: f64| -> f64 {
        let sigma = DensityMatrix::from_probabilities(&[p, 1.0 - p]).expect("probability vector");
        relative_entropy(rho, &sigma).expect("same dimension")
    };
    let mut best_p = 0.5;
    let mut best = f64::INFINITY;
    for i in 0..grid {
        let p = (i as f64 + 0.5) / grid as f64;
        let v = eval(p);
        if v < best {
            best = v;
            best_p = p;
        }
    }
    // golden-section polish around the best grid cell
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let h = 1.0 / grid as f64;
    let (mut lo, mut hi) = ((best_p - h).max(1e-12), (best_p + h).min(1.0 - 1e-12));
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (eval(x1), eval(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = eval(x2);
        }
    }
    Ok(best.min(f1).min(f2))
}

/// Grid of balanced-slice sources `rho01 = a + ib` over the disk
/// `a^2 + b^2 <= 1/4`: coherence, the T value at the reference settings,
/// the NS oracle maximum, and the violation flags, written as CSV.
///
/// The T flag uses the better of the two Z orientations, so it fires exactly
/// when `|a|` crosses the threshold.
pub fn fig2_grid(a_steps: usize, b_steps: usize, seed: u64, out: &Path) -> Result<CampaignResult> {
    if a_steps < 2 || b_steps < 2 {
        return Err(Error::InvalidGrid(format!(
            "grid needs at least 2 steps per axis, got {a_steps}x{b_steps}"
        )));
    }
    let mut campaign = Campaign::new("fig2");
    let spec = ConversionSpec::new(2, 3)?;
    let sqrt2 = std::f64::consts::SQRT_2;
    let ns_opts = SearchOptions { resolution: 6, sweeps: 4, random_restarts: 1, seed };

    let mut file = std::fs::File::create(out)?;
    writeln!(file, "# coherence-to-three-qubit-nonlocality surfaces")?;
    writeln!(
        file,
        "# campaign=fig2 seed={seed} slice: rho00=rho11=1/2, rho01=a+ib, disk a^2+b^2<=1/4"
    )?;
    writeln!(file, "# t_value uses the reference T settings; flags are strict (>bound+1e-9)")?;
    writeln!(file, "a,b,c_l1,t_value,ns_max,t_violated,ns_violated")?;

    for i in 0..a_steps {
        let a = (2 * i) as f64 / (2 * (a_steps - 1)) as f64 - 0.5;
        for j in 0..b_steps {
            let b = (2 * j) as f64 / (2 * (b_steps - 1)) as f64 - 0.5;
            if a * a + b * b > 0.25 + 1e-12 {
                continue;
            }
            campaign.trial();
            let rho_s = slice_qubit(a, b)?;
            let converted = convert(&rho_s, &spec)?;
            let coherence = c_l1(&rho_s);
            let t_primary = t_value(&converted, &t_reference_settings(false))?;
            let t_swapped = t_value(&converted, &t_reference_settings(true))?;

            campaign.check_residual((t_primary - (1.0 + sqrt2 + 2.0 * sqrt2 * a)).abs(), 1e-12);
            campaign.check_residual((t_swapped - (1.0 + sqrt2 - 2.0 * sqrt2 * a)).abs(), 1e-12);

            let t_best = t_primary.max(t_swapped);
            let t_violated = t_best > 3.0 + 1e-9;
            campaign.check(t_violated == (a.abs() > (sqrt2 - 1.0) / 2.0 + 1e-12));

            let point_opts = SearchOptions {
                seed: seed ^ ((i * b_steps + j) as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
                ..ns_opts
            };
            let ns = ns_oracle(&converted, &point_opts)?;
            writeln!(
                file,
                "{a:.17e},{b:.17e},{coherence:.17e},{t_primary:.17e},{:.17e},{},{}",
                ns.value,
                u8::from(t_violated),
                u8::from(ns.violated),
            )?;
        }
    }
    campaign.result.artifacts.push(out.display().to_string());
    Ok(campaign.finish())
}

/// Run every theorem campaign with seeds derived from one base seed.
pub fn run_all(
    trials: usize,
    seed: u64,
    artifact_dir: Option<&Path>,
) -> Result<Vec<CampaignResult>> {
    Ok(vec![
        verify_theorem1(trials, seed.wrapping_add(1)),
        verify_theorem2_and_corollary(trials, 3, seed.wrapping_add(2))?,
        verify_theorem3_chain(trials, seed.wrapping_add(3)),
        verify_theorem4(trials, 2, seed.wrapping_add(4))?,
        verify_theorem4(trials, 3, seed.wrapping_add(5))?,
        verify_theorem5_and_table1(seed.wrapping_add(6), artifact_dir)?,
    ])
}

/// Coherence report helper for the CLI: kept here so the binary needs no
/// direct dependency on the measure functions.
pub fn coherence_report(rho: &DensityMatrix) -> CoherenceReport {
    CoherenceReport::analyze(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::c_rel_entropy;

    #[test]
    fn theorem1_campaign_is_clean_and_deterministic() {
        let a = verify_theorem1(200, 7);
        assert_eq!(a.failures, 0);
        assert!(a.worst_residual < 1e-10);
        let b = verify_theorem1(200, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn theorem2_campaign_is_clean() {
        let r = verify_theorem2_and_corollary(100, 3, 11).unwrap();
        assert_eq!(r.failures, 0);
        assert!(r.worst_residual < 1e-10);
        assert!(verify_theorem2_and_corollary(10, 6, 1).is_err());
    }

    #[test]
    fn theorem3_campaign_is_clean() {
        let r = verify_theorem3_chain(120, 13);
        assert_eq!(r.failures, 0);
        assert!(r.worst_residual <= 1e-9);
    }

    #[test]
    fn theorem4_campaign_is_clean_for_both_dimensions() {
        for d in [2, 3] {
            let r = verify_theorem4(150, d, 17).unwrap();
            assert_eq!(r.failures, 0, "d={d}");
            assert!(r.worst_residual <= 1e-12);
        }
        assert!(verify_theorem4(10, 4, 1).is_err());
    }

    #[test]
    fn theorem5_campaign_fails_only_the_ns_above_leg() {
        let dir = tempfile::tempdir().unwrap();
        let r = verify_theorem5_and_table1(19, Some(dir.path())).unwrap();
        // the NS inequality tops out at exactly 3 on fan-out states, so the
        // above-threshold certification cannot fire; everything else is clean
        assert_eq!(r.failures, 1);
        assert!(r.worst_residual < 1e-10);
        assert_eq!(r.artifacts.len(), 1);
        let table = std::fs::read_to_string(&r.artifacts[0]).unwrap();
        assert!(table.contains("S,0.7071067811865476"));
        assert!(table.contains("T,0.41421356237309515"));
        assert!(table.contains("NS,0"));
        assert!(table.contains("GME,0"));
    }

    #[test]
    fn relative_entropy_oracle_agrees_with_the_closed_form() {
        let mut rng = sampling::rng_from_seed(23);
        for _ in 0..20 {
            let rho = sampling::ginibre_density(&[2], &mut rng);
            let grid = c_rel_entropy_oracle(&rho, 10_000).unwrap();
            let closed = c_rel_entropy(&rho);
            assert!((grid - closed).abs() < 1e-4, "{grid} vs {closed}");
        }
        // plus state and diagonal state
        let plus = slice_qubit(0.5, 0.0).unwrap();
        assert!((c_rel_entropy_oracle(&plus, 1000).unwrap() - 1.0).abs() < 1e-6);
        let diag = DensityMatrix::from_probabilities(&[0.25, 0.75]).unwrap();
        assert!(c_rel_entropy_oracle(&diag, 1000).unwrap() < 1e-10);
        assert!(c_rel_entropy_oracle(&diag, 10).is_err());
    }

    #[test]
    fn fig2_rows_match_the_t_closed_form() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fig2.csv");
        let r = fig2_grid(11, 11, 29, &path).unwrap();
        assert_eq!(r.failures, 0);
        let content = std::fs::read_to_string(&path).unwrap();
        let rows: Vec<&str> = content.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
        assert_eq!(rows.len(), r.trials);
        // the (a, b) = (0.5, 0) corner: t = 1 + 2 sqrt(2)
        let corner = rows
            .iter()
            .find(|row| row.starts_with("5.0") && row.split(',').nth(1).unwrap().starts_with("0.0"))
            .expect("corner row present");
        let t: f64 = corner.split(',').nth(3).unwrap().parse().unwrap();
        assert!((t - (1.0 + 2.0 * std::f64::consts::SQRT_2)).abs() < 1e-12);
        // a pure-imaginary off-diagonal leaves the T value at 1 + sqrt(2)
        let imag = rows
            .iter()
            .find(|row| {
                let mut parts = row.split(',');
                let a: f64 = parts.next().unwrap().parse().unwrap();
                let b: f64 = parts.next().unwrap().parse().unwrap();
                a == 0.0 && (b - 0.3).abs() < 0.021
            })
            .expect("imaginary-axis row present");
        let t: f64 = imag.split(',').nth(3).unwrap().parse().unwrap();
        assert!((t - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-12);
        assert!(fig2_grid(1, 5, 0, &dir.path().join("x.csv")).is_err());
    }

    #[test]
    fn run_all_is_deterministic() {
        let a = run_all(40, 7, None).unwrap();
        let b = run_all(40, 7, None).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.len(), 6);
    }
}
