use rand::Rng;

use super::{CampaignConfig, TheoremId, TrialRecord};
use crate::channel::{
    diagonal_unitary_mixture, identity_channel, phase_damping_channel, random_channel,
    random_circle_measure, random_correlation, random_unital_channel, shift_representation,
    tensor, toeplitz_dephasing, toeplitz_kernel, ProbabilityDistribution,
};
use crate::entropy::{
    check_corollary2, check_theorem1, holevo_gain_bound, projection_gain_bound, GainCertificate,
};
use crate::math::hermitian_eig;
use crate::rng::{derive_seed, random_unit_vector, seeded, SeededRng};
use crate::roof::{check_corollary1, probe_conjecture, ROOF_DOMINANCE_TOL};
use crate::state::{correlated_state, random_correlated_spec, random_density, support_projection};
use crate::{Result, CHANNEL_EQ_TOL};

const SIDE_TOL: f64 = 1e-10;
const BOUND_ZERO_TOL: f64 = 1e-9;

fn draw(rng: &mut SeededRng, lo: usize, max: usize) -> usize {
    rng.random_range(lo..=max.max(lo))
}

/// Runs one trial of `cfg.theorem` from its trial seed. The returned record has
/// `trial == 0`; campaigns overwrite it with the index.
pub fn run_trial_with_seed(cfg: &CampaignConfig, seed: u64) -> TrialRecord {
    let mut verdict = None;
    let outcome = trial(cfg, seed, &mut verdict);
    let (certificate, error) = match outcome {
        Ok(c) => (Some(c.with_tol(cfg.tolerance).with_seed(seed)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    TrialRecord {
        trial: 0,
        seed,
        certificate,
        verdict,
        error,
    }
}

fn trial(
    cfg: &CampaignConfig,
    seed: u64,
    verdict: &mut Option<crate::roof::Verdict>,
) -> Result<GainCertificate> {
    let mut rng = seeded(seed);
    let sub = |k: u64| derive_seed(seed, k);
    let dh = draw(&mut rng, 1, cfg.dim_h);
    let dk = draw(&mut rng, 1, cfg.dim_k);
    let kraus = draw(&mut rng, 1, cfg.num_kraus);

    match cfg.theorem {
        TheoremId::Thm1 => {
            let spec = random_correlated_spec(dh, dk, sub(1));
            check_theorem1(&spec, &random_channel(dk, kraus, sub(2)))
        }
        TheoremId::Cor2 => {
            let rank = draw(&mut rng, 1, dh);
            let corr = random_correlation(dh, rank, sub(1));
            let nu = random_unit_vector(&mut seeded(sub(2)), dh);
            let mut hrng = seeded(sub(3));
            let hs: Vec<_> = (0..dh).map(|_| random_unit_vector(&mut hrng, dk)).collect();
            check_corollary2(&corr, &nu, &hs, &random_channel(dk, kraus, sub(4)))
        }
        TheoremId::Prop1 => {
            let spec = random_correlated_spec(dh, dk, sub(1));
            let rho = correlated_state(&spec)?;
            let p = support_projection(spec.vectors(), dh)?;
            let idem = (&p * &p).max_abs_diff(&p);
            let r = rho.matrix();
            let support = (&p * r).max_abs_diff(r).max((r * &p).max_abs_diff(r));
            let chan = tensor(&identity_channel(dh), &random_channel(dk, kraus, sub(2)));
            Ok(projection_gain_bound(&chan, &rho, &p)?
                .with_dim("dim_h", dh)
                .with_dim("dim_k", dk)
                .with_dim("kraus", kraus)
                .with_aux("projection_idempotence", idem, idem <= SIDE_TOL)
                .with_aux("support_residual", support, support <= SIDE_TOL))
        }
        TheoremId::Eq3 => {
            let chan = random_unital_channel(dk, kraus, sub(1));
            let rho = random_density(dk, sub(2));
            let cert = holevo_gain_bound(&chan, &rho)?;
            let rhs = cert.rhs;
            Ok(cert
                .with_dim("kraus", kraus)
                .with_aux("bound_magnitude", rhs.abs(), rhs.abs() <= BOUND_ZERO_TOL))
        }
        TheoremId::Thm4 => {
            let n = draw(&mut rng, 2, cfg.dim_h);
            let pi = ProbabilityDistribution::random(n, sub(1));
            let dist = phase_damping_channel(&pi)?.choi_distance(&shift_representation(&pi));
            Ok(GainCertificate::new("thm4", 0.0, dist, CHANNEL_EQ_TOL).with_dim("n", n))
        }
        TheoremId::Thm5 => {
            let mu = random_circle_measure(cfg.num_kraus, sub(1));
            let min_eig = hermitian_eig(&toeplitz_kernel(&mu, dh))?.min_eigenvalue();
            let dist = toeplitz_dephasing(&mu, dh)?.choi_distance(&diagonal_unitary_mixture(&mu, dh)?);
            Ok(GainCertificate::new("thm5", 0.0, dist, CHANNEL_EQ_TOL)
                .with_dim("dim", dh)
                .with_dim("atoms", mu.atoms().len())
                .with_aux("kernel_min_eigenvalue", min_eig, min_eig >= -SIDE_TOL))
        }
        TheoremId::Cor1 => {
            let spec = random_correlated_spec(dh, dk, sub(1));
            let omega = random_channel(dk, kraus, sub(2));
            let m = cfg.ensemble_size.unwrap_or(dk * dk);
            let rep = check_corollary1(&spec, &omega, m, cfg.restarts, sub(3))?;
            let excess = rep.roof.value - rep.rhs_weak;
            Ok(rep
                .gain_vs_weak
                .with_dim("dim_h", dh)
                .with_dim("dim_k", dk)
                .with_dim("kraus", kraus)
                .with_aux("roof_value", rep.roof.value, true)
                .with_aux("roof_excess", excess, excess <= ROOF_DOMINANCE_TOL)
                .with_aux("conjecture_margin", rep.conjecture_margin, true))
        }
        TheoremId::Conjecture => {
            let rho = random_density(dh * dk, sub(1));
            let omega = random_channel(dk, kraus, sub(2));
            let probe = probe_conjecture(
                &rho,
                dh,
                dk,
                &omega,
                cfg.ensemble_size,
                cfg.restarts,
                sub(3),
                &[],
                cfg.tolerance,
            )?;
            *verdict = Some(probe.verdict);
            Ok(GainCertificate::new("conjecture", probe.gain, probe.roof.value, cfg.tolerance)
                .with_dim("dim_h", dh)
                .with_dim("dim_k", dk)
                .with_dim("kraus", kraus)
                .with_aux("roof_converged", f64::from(u8::from(probe.roof.converged)), true))
        }
    }
}
