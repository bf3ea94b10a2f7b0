//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes and returns JSON strings; the plain functions in [`api`] do the work
//! and are what the native tests call.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde_json::{json, Value};

    use qdeph::channel::{
        circulant_kernel, classify_phase_damping, phase_damping_channel,
        random_channel, Classification, CorrelationMatrix, ProbabilityDistribution,
    };
    use qdeph::entropy::{check_corollary2, von_neumann};
    use qdeph::io::parse_lambda;
    use qdeph::math::{ComplexMatrix, C64};
    use qdeph::rng::{derive_seed, random_unit_vector, seeded};
    use qdeph::state::DensityMatrix;

    type Result<T> = std::result::Result<T, String>;

    fn err(e: impl std::fmt::Display) -> String {
        e.to_string()
    }

    fn pairs(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect()
    }

    /// Classifies a `λ` sequence given as JSON (`[1, 0.5, ...]` or `[[re, im], ...]`).
    pub fn classify(lambda_json: &str) -> Result<String> {
        let lambda = parse_lambda(lambda_json).map_err(err)?;
        let v = match classify_phase_damping(&lambda) {
            Classification::PhaseDamping(pi) => json!({"phase_damping": true, "pi": pi.weights()}),
            Classification::NotPhaseDamping(v) => json!({"phase_damping": false, "violation": v}),
        };
        Ok(v.to_string())
    }

    /// Kernel of the phase-damping channel of `{"weights": [...]}` and its action on the
    /// uniform superposition.
    pub fn kernel(distribution_json: &str) -> Result<String> {
        let pi: ProbabilityDistribution = qdeph::io::from_json(distribution_json).map_err(err)?;
        let n = pi.len();
        let lambda = pi.characteristic();
        let chan = phase_damping_channel(&pi).map_err(err)?;
        let plus = vec![C64::new(1.0 / (n as f64).sqrt(), 0.0); n];
        let input = DensityMatrix::pure(&plus).map_err(err)?;
        let output = chan.apply(&input).map_err(err)?;
        let v: Value = json!({
            "n": n,
            "lambda": lambda.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "kernel": pairs(&circulant_kernel(&lambda)),
            "output": pairs(output.matrix()),
            "entropy_in": von_neumann(&input).map_err(err)?,
            "entropy_out": von_neumann(&output).map_err(err)?,
        });
        Ok(v.to_string())
    }

    /// Both sides of the dephasing inequality along `Λ(s) = (1 − s)·J + s·I`, from no
    /// dephasing (`s = 0`) to complete dephasing (`s = 1`), for one random instance.
    pub fn dephasing_sweep(n: usize, dim_k: usize, steps: usize, seed: u64) -> Result<String> {
        if n == 0 || dim_k == 0 || steps < 2 {
            return Err("need n ≥ 1, dim_k ≥ 1 and at least 2 steps".into());
        }
        let nu = random_unit_vector(&mut seeded(derive_seed(seed, 0)), n);
        let mut hrng = seeded(derive_seed(seed, 1));
        let hs: Vec<Vec<C64>> = (0..n).map(|_| random_unit_vector(&mut hrng, dim_k)).collect();
        let omega = random_channel(dim_k, 2, derive_seed(seed, 2));
        let mut points = Vec::with_capacity(steps);
        for i in 0..steps {
            let s = i as f64 / (steps - 1) as f64;
            let m = ComplexMatrix::from_fn(n, n, |a, b| {
                C64::new(if a == b { 1.0 } else { 1.0 - s }, 0.0)
            });
            let corr = CorrelationMatrix::new(m).map_err(err)?;
            let cert = check_corollary2(&corr, &nu, &hs, &omega).map_err(err)?;
            points.push(json!({"s": s, "lhs": cert.lhs, "rhs": cert.rhs, "pass": cert.pass}));
        }
        Ok(json!({"n": n, "dim_k": dim_k, "points": points}).to_string())
    }
}

#[wasm_bindgen]
pub fn classify_lambda(lambda_json: &str) -> Result<String, JsValue> {
    api::classify(lambda_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn phase_damping_kernel(distribution_json: &str) -> Result<String, JsValue> {
    api::kernel(distribution_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dephasing_sweep(n: usize, dim_k: usize, steps: usize, seed: u64) -> Result<String, JsValue> {
    api::dephasing_sweep(n, dim_k, steps, seed).map_err(|e| JsValue::from_str(&e))
}
