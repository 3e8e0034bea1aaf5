//! The verification suite behind `geoment verify`.
//!
//! Each row recomputes one headline value. One-sided claims are expressed
//! as the size of the violation with expected value zero, so every row
//! obeys `pass = |expected − computed| ≤ tolerance`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::time::Instant;

use geoment::bounds::{f_n, psi_y_closest_product, psi_y_head_weight, AngleTuple};
use geoment::distill::{
    bell_violation_threshold, consistency_report, ghz_basis, max_delta_nondistillable, nondistillable_all_partitions,
    BellInequalityKind, DepolarizedCoeffs,
};
use geoment::geometric::{lambda_max, support_lambda_profile, GmeOptions, PureMeasure};
use geoment::linalg::{eig_hermitian, max_abs_diff};
use geoment::rng::stream_rng;
use geoment::roof::{average_entanglement, certificate_dur, certificate_smolin, optimize_roof, RoofOptions};
use geoment::spectral::{dur_negativity_closed, min_pt_eigenvalue, negativity, relative_entropy, DurPartition};
use geoment::state::{overlap, partial_trace, PartySplit};
use geoment::zoo::{
    bell, bell_like, dur, dur_original, ghz, psi_y, sigma_conjectured, smolin, u_index, u_state, x_state, xbar_view,
    FlipKind, SigmaTarget, Sign, SmolinForm, ZooState,
};
use geoment::{DensityMatrix, PureState};
use rand::Rng;
use serde::Serialize;

use crate::commands::{self, CliResult, GmeArgs};
use crate::TolProfile;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub id: String,
    pub location: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub profile: &'static str,
    pub seed: u64,
    pub rows: Vec<Row>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn table(&self) -> String {
        let idw = self.rows.iter().map(|r| r.id.chars().count()).max().unwrap_or(2).max(2);
        let mut out = format!(
            "{:<idw$}  {:>20}  {:>20}  {:>8}  {:>4}  {:>7}  location\n",
            "id", "expected", "computed", "tol", "ok", "secs"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:<idw$}  {:>20.12}  {:>20.12}  {:>8.0e}  {:>4}  {:>7.3}  {}\n",
                r.id,
                r.expected,
                r.computed,
                r.tolerance,
                if r.pass { "PASS" } else { "FAIL" },
                r.seconds,
                r.location
            ));
            if let Some(e) = &r.error {
                out.push_str(&format!("    error: {e}\n"));
            }
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        out.push_str(&format!("{passed}/{} rows pass ({} profile, seed {})\n", self.rows.len(), self.profile, self.seed));
        out
    }
}

/// Tolerances under the default and strict profiles.
#[derive(Clone, Copy)]
struct Tol(f64, f64);

const EXACT: Tol = Tol(1e-9, 1e-12);
const OPTIMIZER: Tol = Tol(1e-3, 1e-6);
const SAMPLED: Tol = Tol(1e-6, 1e-9);

struct Suite {
    profile: TolProfile,
    rows: Vec<Row>,
}

impl Suite {
    fn check(&mut self, id: impl Into<String>, location: &str, expected: f64, tol: Tol, f: impl FnOnce() -> CliResult<f64>) {
        let tolerance = match self.profile {
            TolProfile::Default => tol.0,
            TolProfile::Strict => tol.1,
        };
        let t = Instant::now();
        let (computed, error) = match f() {
            Ok(v) => (v, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        self.rows.push(Row {
            id: id.into(),
            location: location.to_string(),
            expected,
            computed,
            tolerance,
            pass: (expected - computed).abs() <= tolerance,
            seconds: t.elapsed().as_secs_f64(),
            error,
        });
    }
}

fn max_diff_pure(a: &PureState, b: &PureState) -> f64 {
    a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn cert_value(n: usize, x: f64, kind: PureMeasure) -> CliResult<f64> {
    Ok(average_entanglement(&certificate_dur(n, x)?, kind, &GmeOptions::default())?)
}

fn lambda_of(psi: &PureState) -> CliResult<f64> {
    Ok(lambda_max(psi, &GmeOptions::default())?.lambda_max)
}

pub fn run(profile: TolProfile, seed: u64) -> VerifyReport {
    let mut s = Suite { profile, rows: Vec::new() };
    let smolin_rho = smolin(SmolinForm::GhzLike);
    let o = GmeOptions::default().with_seed(seed);

    // States.
    s.check("ghz4-amplitude", "GHZ constructor, |X₀⟩ amplitude on |0000⟩", FRAC_1_SQRT_2, EXACT, || {
        Ok(ghz(4, 0.0)?.amplitudes()[0].re)
    });
    s.check("ghz4-reduced-state", "single-party reduction of GHZ₄ is I/2 (max deviation)", 0.0, EXACT, || {
        let r = partial_trace(&ghz(4, 0.0)?.projector(), &[0])?;
        Ok(max_abs_diff(r.matrix(), DensityMatrix::maximally_mixed(1).matrix()))
    });
    s.check("bell0-amplitudes", "Bell state (|00⟩+|11⟩)/√2 (max deviation)", 0.0, EXACT, || {
        let b = bell(0)?;
        let target = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        Ok(b.amplitudes().iter().zip(target).map(|(z, t)| (z.re - t).abs() + z.im.abs()).fold(0.0, f64::max))
    });
    s.check("ghz4-is-x0", "GHZ₄ equals |X₀⟩ (max deviation)", 0.0, EXACT, || {
        Ok(max_diff_pure(&ghz(4, 0.0)?, &x_state(0)?))
    });
    s.check("x2-support", "|X₂⟩ weight on indices 0101 and 1010", 1.0, EXACT, || {
        let a = x_state(2)?;
        let a = a.amplitudes();
        Ok(a[5].norm_sqr() + a[10].norm_sqr())
    });
    s.check("xbar3-view", "|X̄₃⟩ = (|0,6⟩+|1,1⟩)/√2 with BCD fused (weight on the two terms)", 1.0, EXACT, || {
        let v = xbar_view(3)?;
        Ok(v.amplitude(0, 6).norm_sqr() + v.amplitude(1, 1).norm_sqr())
    });
    s.check("smolin-two-forms", "Smolin state as Bell pairs equals GHZ-like mixture (max deviation)", 0.0, EXACT, || {
        Ok(max_abs_diff(smolin(SmolinForm::BellPairs).matrix(), smolin_rho.matrix()))
    });
    s.check("smolin-x-populations", "⟨Xᵢ|ρ|Xᵢ⟩ = 1/4 for i = 0..3 (max deviation)", 0.0, EXACT, || {
        let mut worst = 0.0f64;
        for i in 0..4 {
            worst = worst.max((smolin_rho.expectation(&x_state(i)?)? - 0.25).abs());
        }
        Ok(worst)
    });
    for n in 4..=6 {
        s.check(
            format!("dur-original N={n}"),
            "ρ_N(1/(N+1)) equals the original bound entangled state (max deviation)",
            0.0,
            EXACT,
            || Ok(max_abs_diff(dur(n, 1.0 / (n as f64 + 1.0))?.matrix(), dur_original(n)?.matrix())),
        );
    }
    s.check("dur-u-population N=5 x=0.3", "⟨u_k|ρ_N(x)|u_k⟩ = (1−x)/(2N), k = 1..N (max deviation)", 0.0, EXACT, || {
        let rho = dur(5, 0.3)?;
        let mut worst = 0.0f64;
        for k in 1..=5 {
            worst = worst.max((rho.expectation(&u_state(5, k)?)? - 0.07).abs());
        }
        Ok(worst)
    });
    s.check("bell-like-fusion", "|Ψ⁺₀⟩ on qubit ⊗ 8-level party equals |X̄₀⟩ (max deviation)", 0.0, EXACT, || {
        let a = bell_like(4, 0, Sign::Plus)?;
        let b = xbar_view(0)?;
        Ok(a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
    });
    s.check("sigma-smolin-diagonal", "conjectured Smolin σ: unit trace, entries in {0, 1/8} (max deviation)", 0.0, EXACT, || {
        let m = sigma_conjectured(SigmaTarget::Smolin)?.into_matrix();
        let mut worst = (m.trace().re - 1.0).abs();
        for i in 0..16 {
            let d = m[(i, i)].re;
            worst = worst.max(d.abs().min((d - 0.125).abs()));
        }
        Ok(worst)
    });

    // Entanglement eigenvalue and pure measures.
    for n in 3..=8 {
        s.check(format!("ghz-lambda N={n}"), "maximal entanglement eigenvalue of GHZ_N is 1/√2", FRAC_1_SQRT_2, EXACT, || {
            lambda_of(&ghz(n, 0.0)?)
        });
    }
    s.check("psiy-lambda N=5 y=0.4", "Λ_max(ψ(y)) = √((2−y)/2) at y = 0.4", 0.8f64.sqrt(), EXACT, || {
        lambda_of(&psi_y(5, 0.4, Sign::Plus, FlipKind::U, 2)?)
    });
    s.check("psiy-lambda-all-members N=4 y=0.7", "Λ_max(ψ(y)) for every sign, flip type and k (max deviation)", 0.0, EXACT, || {
        let want = (1.3f64 / 2.0).sqrt();
        let mut worst = 0.0f64;
        for sign in Sign::BOTH {
            for kind in [FlipKind::U, FlipKind::V] {
                for k in 1..=4 {
                    worst = worst.max((lambda_of(&psi_y(4, 0.7, sign, kind, k)?)? - want).abs());
                }
            }
        }
        Ok(worst)
    });
    s.check("ghz4-e-sin2", "E_sin² of each |Xᵢ⟩ is 1/2", 0.5, EXACT, || {
        Ok(PureMeasure::Sin2.from_lambda(lambda_of(&x_state(1)?)?))
    });
    s.check("ghz4-e-log2", "ℰ_log₂ of each |Xᵢ⟩ is 1", 1.0, EXACT, || {
        Ok(PureMeasure::Log2.from_lambda(lambda_of(&x_state(1)?)?))
    });
    s.check("psiy-e-sin2 y=0.6", "E_sin²(ψ(y)) = y/2", 0.3, EXACT, || {
        Ok(PureMeasure::Sin2.from_lambda(lambda_of(&psi_y(5, 0.6, Sign::Minus, FlipKind::V, 3)?)?))
    });
    s.check("psiy-e-log2 y=0.6", "ℰ_log₂(ψ(y)) = log₂(2/(2−y))", (2.0f64 / 1.4).log2(), EXACT, || {
        Ok(PureMeasure::Log2.from_lambda(lambda_of(&psi_y(5, 0.6, Sign::Minus, FlipKind::V, 3)?)?))
    });
    s.check("psiy-head-weight y=0.4", "closest product for ψ(y): head weight p = y/(2−y)", 0.25, EXACT, || {
        Ok(psi_y_head_weight(0.4)?)
    });
    s.check("psiy-closest-product y=0.4", "overlap of the closed-form closest product with ψ(0.4)", 0.8f64.sqrt(), EXACT, || {
        let phi = psi_y_closest_product(5, 0.4)?.to_pure_state()?;
        Ok(overlap(&phi, &psi_y(5, 0.4, Sign::Plus, FlipKind::U, 1)?)?.norm())
    });

    // Support bounds.
    s.check("smolin-support-lambda", "Smolin support states never exceed Λ = 1/√2 (excess over 10³ samples)", 0.0, SAMPLED, || {
        let samples = support_lambda_profile(&smolin_rho, 1000, &o, None)?;
        Ok(samples.iter().map(|x| x.lambda - FRAC_1_SQRT_2).fold(0.0, f64::max))
    });
    s.check("dur-support-bound N=5 x=0.3", "support states of ρ_N(x) obey E_sin² ≥ y/2 (violation over 10³ samples)", 0.0, SAMPLED, || {
        let g = ghz(5, 0.0)?;
        let samples = support_lambda_profile(&dur(5, 0.3)?, 1000, &o, Some(&g))?;
        Ok(samples.iter().map(|x| (x.y.unwrap_or(0.0) / 2.0 - x.e_sin2).max(0.0)).fold(0.0, f64::max))
    });

    // Certificates.
    s.check("smolin-certificate-reconstruction", "four |Xᵢ⟩ at weight 1/4 rebuild the Smolin state", 0.0, EXACT, || {
        Ok(max_abs_diff(certificate_smolin().reconstruct().matrix(), smolin_rho.matrix()))
    });
    s.check("smolin-certificate-members", "Smolin certificate has four members of weight 1/4 (deviation)", 0.0, EXACT, || {
        let d = certificate_smolin();
        Ok(d.weights().iter().map(|w| (w - 0.25).abs()).sum::<f64>() + (d.len() as f64 - 4.0).abs())
    });
    s.check("smolin-e-sin2 certificate", "Smolin E_sin² from the certificate", 0.5, EXACT, || {
        Ok(average_entanglement(&certificate_smolin(), PureMeasure::Sin2, &o)?)
    });
    s.check("smolin-e-log2 certificate", "Smolin ℰ_log₂ from the certificate", 1.0, EXACT, || {
        Ok(average_entanglement(&certificate_smolin(), PureMeasure::Log2, &o)?)
    });
    s.check("dur-certificate N=5 x=0.2", "4N members ψ(x) at weight 1/(4N) rebuild ρ_N(x)", 0.0, EXACT, || {
        let d = certificate_dur(5, 0.2)?;
        let w = d.weights().iter().map(|w| (w - 0.05).abs()).sum::<f64>() + (d.len() as f64 - 20.0).abs();
        Ok(w + max_abs_diff(d.reconstruct().matrix(), dur(5, 0.2)?.matrix()))
    });
    for (n, x) in [(4, 0.1), (5, 0.5), (6, 1.0 / 7.0)] {
        s.check(format!("dur-e-sin2 certificate N={n} x={x:.4}"), "Dür E_sin² = x/2 from the certificate", x / 2.0, EXACT, || {
            cert_value(n, x, PureMeasure::Sin2)
        });
        s.check(
            format!("dur-e-log2 certificate N={n} x={x:.4}"),
            "Dür ℰ_log₂ = log₂(2/(2−x)) from the certificate",
            (2.0 / (2.0 - x)).log2(),
            EXACT,
            || cert_value(n, x, PureMeasure::Log2),
        );
    }

    // Roof optimizer.
    s.check("smolin-e-sin2 optimizer", "Smolin E_sin² by roof optimization, M = 8, 8 restarts", 0.5, OPTIMIZER, || {
        let opts = RoofOptions::default().with_seed(seed).with_ensemble_size(8).with_restarts(8);
        Ok(optimize_roof(&smolin_rho, PureMeasure::Sin2, &opts)?.value)
    });
    s.check("dur-e-sin2 optimizer N=4 x=0.2", "Dür E_sin² by roof optimization, M = 16", 0.1, OPTIMIZER, || {
        let opts = RoofOptions::default().with_seed(seed).with_ensemble_size(16);
        Ok(optimize_roof(&dur(4, 0.2)?, PureMeasure::Sin2, &opts)?.value)
    });

    // Negativity.
    s.check("smolin-neg A:BCD", "Smolin negativity across A:BCD", 1.0, EXACT, || {
        Ok(negativity(&smolin_rho, &PartySplit::first_vs_rest(4)?)?)
    });
    s.check("smolin-neg AB:CD", "Smolin negativity across AB:CD", 0.0, EXACT, || {
        Ok(negativity(&smolin_rho, &PartySplit::first_two_vs_rest(4)?)?)
    });
    s.check("smolin-pt AB:CD", "Smolin partial transpose on CD is PSD (negative part of min eigenvalue)", 0.0, EXACT, || {
        Ok(min_pt_eigenvalue(&smolin_rho, &PartySplit::first_two_vs_rest(4)?)?.min(0.0))
    });
    for (n, x) in [(6, 0.3), (4, 0.5), (8, 0.9), (5, 0.1)] {
        let closed = ((n as f64 + 1.0) * x - 1.0).max(0.0) / n as f64;
        s.check(format!("dur-neg-one-vs-rest N={n} x={x}"), "Dür negativity 1:rest = max{0, ((N+1)x−1)/N}", closed, EXACT, || {
            Ok(negativity(&dur(n, x)?, &PartySplit::first_vs_rest(n)?)?)
        });
        s.check(format!("dur-neg-two-vs-rest N={n} x={x}"), "Dür negativity 12:rest = x", x, EXACT, || {
            Ok(negativity(&dur(n, x)?, &PartySplit::first_two_vs_rest(n)?)?)
        });
    }
    s.check("dur-neg-closed N=5 x=0.2", "closed-form 1:rest negativity arithmetic", 0.04, EXACT, || {
        Ok(dur_negativity_closed(5, 0.2, DurPartition::OneVsRest)?)
    });
    s.check("dur-neg-closed N=5 x=1/6", "closed form vanishes at the PPT boundary x = 1/(N+1)", 0.0, EXACT, || {
        Ok(dur_negativity_closed(5, 1.0 / 6.0, DurPartition::OneVsRest)?)
    });
    s.check("dur-neg-closed N=7 x=0.3 two", "closed-form 12:rest negativity equals x", 0.3, EXACT, || {
        Ok(dur_negativity_closed(7, 0.3, DurPartition::TwoVsRest)?)
    });
    s.check("dur-ppt-boundary N=4..8", "bound entangled for 0 < x ≤ 1/(N+1): min PT eigenvalue (negative part)", 0.0, Tol(1e-10, 1e-12), || {
        let mut worst = 0.0f64;
        for n in 4..=8 {
            for x in [0.05, 1.0 / (n as f64 + 1.0)] {
                worst = worst.min(min_pt_eigenvalue(&dur(n, x)?, &PartySplit::first_vs_rest(n)?)?);
            }
        }
        Ok(worst)
    });

    // Relative entropy.
    s.check("smolin-relent", "S(ρ‖σ) for the Smolin state and its conjectured σ", 1.0, EXACT, || {
        Ok(relative_entropy(&smolin_rho, &sigma_conjectured(SigmaTarget::Smolin)?)?)
    });
    for (n, x) in [(4, 0.3), (5, 0.2), (6, 0.7)] {
        s.check(format!("dur-relent N={n} x={x}"), "S(ρ_N(x)‖σ) = x, an upper bound on E_R", x, EXACT, || {
            Ok(relative_entropy(&dur(n, x)?, &sigma_conjectured(SigmaTarget::Dur { n, x })?)?)
        });
    }

    // Distillability.
    s.check("ghz-basis N=4 j=3 +", "|Ψ⁺₃⟩ of the 4-qubit GHZ basis equals |X₁⟩ (max deviation)", 0.0, EXACT, || {
        let b = ghz_basis(4)?;
        Ok(max_diff_pure(&b[6].state, &x_state(1)?))
    });
    s.check("nodistill-boundary N=5", "uniform λ_j at Δ = 2^−(N−1) saturate the nondistillability condition (2λ_j − Δ)", 0.0, EXACT, || {
        let c = DepolarizedCoeffs::uniform(5, max_delta_nondistillable(5)?)?;
        if !nondistillable_all_partitions(&c).holds {
            return Err(commands::usage("condition reported as violated"));
        }
        Ok(2.0 * c.lambda(1) - c.delta())
    });
    s.check("max-delta N=4", "largest nondistillable Δ is 2^−(N−1)", 0.125, EXACT, || Ok(max_delta_nondistillable(4)?));
    s.check("max-delta N=8", "largest nondistillable Δ is 2^−(N−1)", 1.0 / 128.0, EXACT, || Ok(max_delta_nondistillable(8)?));
    s.check("bell-threshold two_setting N=8", "two-setting threshold 2^−(N−1)/2", 2f64.powf(-3.5), EXACT, || {
        Ok(bell_violation_threshold(8, BellInequalityKind::TwoSetting)?)
    });
    s.check("bell-threshold three_setting N=7", "three-setting threshold √3 (2/3)^N", 3f64.sqrt() * (2.0f64 / 3.0).powi(7), EXACT, || {
        Ok(bell_violation_threshold(7, BellInequalityKind::ThreeSetting)?)
    });
    s.check("bell-threshold functional N=6", "functional threshold 2 (2/π)^N", 2.0 * (2.0 / std::f64::consts::PI).powi(6), EXACT, || {
        Ok(bell_violation_threshold(6, BellInequalityKind::Functional)?)
    });
    s.check("bell-consistency N=4..12", "every Bell threshold exceeds 2^−(N−1) (rows not exceeding)", 0.0, EXACT, || {
        Ok(consistency_report(4..=12)?.iter().filter(|r| !r.exceeds).count() as f64)
    });

    // Inequalities.
    s.check("f-monotone N=4..10", "f_(N+1) ≤ f_N on random tuples (largest increase)", 0.0, Tol(1e-12, 1e-12), || {
        let mut rng = stream_rng(seed, 900);
        let mut worst = 0.0f64;
        for _ in 0..2000 {
            let mut t = AngleTuple::random(&mut rng, 4);
            for _ in 4..=10 {
                let next = t.extended(rng.random_range(0.0..=std::f64::consts::FRAC_PI_2))?;
                worst = worst.max(f_n(&next) - f_n(&t));
                t = next;
            }
        }
        Ok(worst)
    });

    // Command-line examples.
    let pure_args = GmeArgs { mixed: false, measure: PureMeasure::Sin2, restarts: None, ensemble_size: None, seed, tol: None };
    s.check("cli gme ghz:4", "`gme` on GHZ₄ reports value 1/2", 0.5, EXACT, || {
        Ok(commands::gme_state(&ZooState::Pure(ghz(4, 0.0)?), &pure_args)?.value)
    });
    s.check("cli gme smolin sin2 seed 7", "`gme --mixed --measure sin2 --seed 7` on the Smolin state", 0.5, OPTIMIZER, || {
        let args = GmeArgs { mixed: true, seed: 7, ..pure_args };
        Ok(commands::gme_state(&ZooState::Density(smolin_rho.clone()), &args)?.value)
    });
    s.check("cli gme dur:5:0.2 log2", "`gme --mixed --measure log2` on ρ_5(0.2) reaches log₂(2/1.8)", (2.0f64 / 1.8).log2(), OPTIMIZER, || {
        let args = GmeArgs { mixed: true, measure: PureMeasure::Log2, ..pure_args };
        Ok(commands::gme_state(&ZooState::Density(dur(5, 0.2)?), &args)?.value)
    });
    s.check("cli negativity dur:5:0.2 0,1:2,3,4", "`negativity --partition 0,1:2,3,4` on ρ_5(0.2)", 0.2, EXACT, || {
        commands::negativity_of(&ZooState::Density(dur(5, 0.2)?), "0,1:2,3,4")
    });
    s.check("cli sweep x=0.5 e_sin2_cert", "`sweep --family dur --N 4 --x 0:1:11` row x = 0.5", 0.25, EXACT, || {
        let rows = commands::sweep_rows(4, &commands::parse_grid("0:1:11")?, false, seed)?;
        Ok(rows[5].e_sin2_cert)
    });
    s.check("cli sweep x=1/5 neg_1_rest", "`sweep` row at the PPT boundary x = 1/(N+1)", 0.0, EXACT, || {
        Ok(commands::sweep_rows(4, &[0.2], false, seed)?[0].neg_1_rest)
    });
    s.check("cli relent dur:5:0.2 conjectured", "`relent --sigma conjectured` on ρ_5(0.2)", 0.2, EXACT, || {
        let rho = dur(5, 0.2)?;
        Ok(relative_entropy(&rho, &commands::conjectured_sigma_for(&rho)?)?)
    });
    s.check("cli distill ghz:4 delta", "`distill --in` on GHZ₄ gives Δ = 1", 1.0, EXACT, || {
        Ok(commands::distill_report(&ghz(4, 0.0)?.projector())?.delta)
    });
    s.check("u-index N=5 k=2", "flip string u_k has a single 1 at party k", 8.0, EXACT, || Ok(u_index(5, 2) as f64));
    s.check("eigensolver 256", "Hermitian eigensolver reconstructs a 256-dimensional state", 0.0, EXACT, || {
        let m = dur(8, 0.4)?.into_matrix();
        Ok(max_abs_diff(&eig_hermitian(&m)?.reconstruct(), &m))
    });

    VerifyReport {
        profile: match profile {
            TolProfile::Default => "default",
            TolProfile::Strict => "strict",
        },
        seed,
        rows: s.rows,
    }
}
