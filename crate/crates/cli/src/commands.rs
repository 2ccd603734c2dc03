use std::path::Path;

use jostlab_core::{
    bisect_resonant_depth, build_potential, depth_scan, detect_resonance_with, discretize, evolve_exact, fit_decay,
    free_evolve, scattering_table_with_tol, verify_resonance, verify_transport, weighted_sup_norm, Complex64,
    CutoffSpec, DecayFit, EvolutionResult, SampledPotential, SpatialGrid, SpectralPropagator, VerifyOptions,
};
use serde_json::json;

use crate::config::RunConfig;
use crate::CliError;

pub struct Context {
    cfg: RunConfig,
    v: SampledPotential,
}

impl Context {
    pub fn new(cfg: RunConfig) -> Result<Context, CliError> {
        let v = build_potential(&cfg.potential, &cfg.grid)?;
        Ok(Context { cfg, v })
    }

    fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        let dir = &self.cfg.output_dir;
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    fn write_json(&self, name: &str, value: &serde_json::Value) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).expect("json values always serialize");
        text.push('\n');
        self.write(name, &text)
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            t_samples: self.cfg.t_samples.clone(),
            slope_tol: self.cfg.tolerances.slope_tol,
            lambda_max: self.cfg.lambda_max,
            resonance: self.cfg.tolerances.resonance(),
            ..VerifyOptions::default()
        }
    }

    fn propagator(&self) -> SpectralPropagator<'_> {
        let p = SpectralPropagator::new(&self.v, CutoffSpec::for_potential(&self.v));
        match self.cfg.lambda_max {
            Some(l) => p.with_lambda_max(l),
            None => p,
        }
    }

    pub fn scatter(&self) -> Result<(), CliError> {
        let tol = &self.cfg.tolerances;
        let lambdas = self.cfg.lambda_grid.points()?;
        let table = scattering_table_with_tol(&self.v, &lambdas, tol.tol_ode, tol.tol_scatter)?;
        self.write("scattering.csv", &table.to_csv())?;
        println!(
            "rows {} max_unitarity_defect {:e} flagged {} failed {}",
            table.rows.len(),
            table.max_unitarity_defect(),
            table.flagged_rows(),
            table.failed_rows()
        );
        if table.failed_rows() > 0 {
            return Err(CliError::Core(jostlab_core::Error::JostNonConvergence {
                lambda: first_failed(&table),
                residual: f64::NAN,
                tol: tol.tol_ode,
            }));
        }
        Ok(())
    }

    pub fn resonance(&self) -> Result<(), CliError> {
        let report = detect_resonance_with(&self.v, self.cfg.tolerances.resonance())?;
        let mut value = serde_json::to_value(&report).expect("report serializes");
        value["potential"] = json!(self.cfg.potential.label());
        self.write_json("resonance.json", &value)?;
        println!("{}", serde_json::to_string(&value).expect("json values always serialize"));
        Ok(())
    }

    pub fn depth_scan(&self) -> Result<(), CliError> {
        let spec = &self.cfg.potential;
        let tol = self.cfg.tolerances.resonance();
        let depths = self.cfg.depth_scan.points()?;
        let scan = depth_scan(spec, &depths, &self.cfg.grid, tol)?;
        self.write("depth_scan.csv", &scan.to_csv())?;
        let brackets = scan.brackets();
        let resonant = brackets
            .iter()
            .map(|&(lo, hi)| bisect_resonant_depth(spec, lo, hi, &self.cfg.grid, tol))
            .collect::<Result<Vec<f64>, _>>()?;
        let value = json!({
            "potential": spec.label(),
            "brackets": brackets,
            "resonant_depths": resonant,
        });
        self.write_json("depth_scan.json", &value)?;
        for d in &resonant {
            println!("resonant depth {d}");
        }
        if resonant.is_empty() {
            println!("no sign change of W(0) in [{}, {}]", self.cfg.depth_scan.min, self.cfg.depth_scan.max);
        }
        Ok(())
    }

    pub fn evolve(&self, t: Option<f64>, oracle: bool) -> Result<(), CliError> {
        let t =
            t.or(self.cfg.t).ok_or_else(|| CliError::Usage("evolve needs --t or a `t` entry in the config".into()))?;
        let psi = self.cfg.state.sample(&self.cfg.grid);
        let result =
            if self.v.is_zero() { free_evolve(&self.cfg.grid, &psi, t)? } else { self.propagator().evolve(&psi, t)? };
        self.write("evolution.csv", &result.to_csv())?;
        let mut sidecar = result.diagnostics_json();
        if oracle {
            let diff = self.oracle_difference(&result)?;
            sidecar["sup_difference"] = json!(diff);
            sidecar["oracle_grid"] = json!(self.cfg.oracle_grid);
            println!("sup_difference {diff:e}");
        }
        self.write_json("evolution.json", &sidecar)?;
        println!("t {} method {} points {}", result.t, sidecar["method"].as_str().unwrap_or("?"), result.x.len());
        Ok(())
    }

    /// Sup difference between `result` and the finite-difference oracle on
    /// the oracle box, read off at the same points.
    fn oracle_difference(&self, result: &EvolutionResult) -> Result<f64, CliError> {
        let g = self.cfg.oracle_grid;
        let vb = build_potential(&self.cfg.potential, &g)?;
        let h = discretize(&vb, &g)?;
        let exact = evolve_exact(&h, &self.cfg.state.sample(&g), result.t, true)?;
        let mut diff = 0.0f64;
        for (x, u) in result.x.iter().zip(&result.u) {
            diff = diff.max((u - interpolate(&g, &exact.u, *x)?).norm());
        }
        Ok(diff)
    }

    pub fn verify(&self, theorem: u8) -> Result<(), CliError> {
        let opts = self.verify_options();
        let r = match theorem {
            1 => verify_transport(&self.v, &self.cfg.state, &opts)?,
            _ => verify_resonance(&self.v, &self.cfg.state, &opts)?,
        };
        self.write("decay.csv", &r.decay_csv())?;
        let verdict = r.verdict_json();
        self.write_json("verdict.json", &verdict)?;
        println!("{}", serde_json::to_string(&verdict).expect("json values always serialize"));
        if r.passed() {
            Ok(())
        } else {
            Err(CliError::Failed(format!("slope {:.3} is not within {} of {}", r.fit.slope, r.tol, r.target)))
        }
    }

    /// Fits one line per `(weight_sigma, subtracted)` group of a decay CSV.
    /// Only `t` and `norm` columns are required.
    pub fn fit_csv(&self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let groups = parse_decay_csv(&text)?;
        let mut fits = Vec::new();
        for ((sigma, subtracted), (ts, norms)) in &groups {
            let fit = fit_decay(ts, norms)?;
            fits.push(fit_json(*sigma, *subtracted, &fit));
        }
        self.finish_fits(fits)
    }

    /// Evolves the configured state at every `t_samples` entry and fits the
    /// decay of the weighted sup norms for σ = 0, -1, -2.
    pub fn fit_from_config(&self) -> Result<(), CliError> {
        let opts = self.verify_options();
        let xs = opts.observation_points(&self.v);
        let psi = self.cfg.state.sample(&self.cfg.grid);
        let results = self.propagator().evolve_many(&psi, &self.cfg.t_samples, &xs)?;
        let sigmas = [0.0, -1.0, -2.0];
        let mut csv = String::from("t,norm,weight_sigma,subtracted\n");
        let mut norms = vec![Vec::new(); sigmas.len()];
        for r in &results {
            for (k, &s) in sigmas.iter().enumerate() {
                let n = weighted_sup_norm(&r.u, &r.x, s);
                csv.push_str(&format!("{},{},{},false\n", r.t, n, s));
                norms[k].push(n);
            }
        }
        self.write("decay.csv", &csv)?;
        let mut fits = Vec::new();
        for (s, n) in sigmas.iter().zip(&norms) {
            fits.push(fit_json(*s, false, &fit_decay(&self.cfg.t_samples, n)?));
        }
        self.finish_fits(fits)
    }

    fn finish_fits(&self, fits: Vec<serde_json::Value>) -> Result<(), CliError> {
        for f in &fits {
            println!(
                "sigma {} subtracted {} slope {:.4} stderr {:.2e}",
                f["weight_sigma"],
                f["subtracted"],
                f["slope"].as_f64().unwrap_or(f64::NAN),
                f["stderr"].as_f64().unwrap_or(f64::NAN)
            );
        }
        self.write_json("decay_fit.json", &json!({ "fits": fits }))
    }
}

fn first_failed(table: &jostlab_core::ScatteringTable) -> f64 {
    table
        .rows
        .iter()
        .find(|r| matches!(r.status, jostlab_core::RowStatus::Failed(_)))
        .map(|r| r.lambda)
        .unwrap_or(f64::NAN)
}

fn fit_json(sigma: f64, subtracted: bool, fit: &DecayFit) -> serde_json::Value {
    json!({
        "weight_sigma": sigma,
        "subtracted": subtracted,
        "slope": fit.slope,
        "stderr": fit.slope_stderr,
        "intercept": fit.intercept,
        "samples": fit.t_samples.len(),
    })
}

type Groups = Vec<((f64, bool), (Vec<f64>, Vec<f64>))>;

fn parse_decay_csv(text: &str) -> Result<Groups, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> =
        lines.next().ok_or_else(|| CliError::Usage("decay CSV is empty".into()))?.split(',').map(str::trim).collect();
    let col = |name: &str| header.iter().position(|h| *h == name);
    let (ti, ni) = match (col("t"), col("norm")) {
        (Some(t), Some(n)) => (t, n),
        _ => return Err(CliError::Usage("decay CSV needs `t` and `norm` columns".into())),
    };
    let (si, bi) = (col("weight_sigma"), col("subtracted"));
    let mut groups: Groups = Vec::new();
    for (k, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || CliError::Usage(format!("decay CSV line {}: cannot parse `{line}`", k + 2));
        let num = |i: usize| fields.get(i).and_then(|s| s.parse::<f64>().ok()).ok_or_else(bad);
        let t = num(ti)?;
        let n = num(ni)?;
        let sigma = match si {
            Some(i) => num(i)?,
            None => 0.0,
        };
        let subtracted = match bi {
            Some(i) => fields.get(i).and_then(|s| s.parse::<bool>().ok()).ok_or_else(bad)?,
            None => false,
        };
        let key = (sigma, subtracted);
        match groups.iter_mut().find(|(g, _)| *g == key) {
            Some((_, (ts, ns))) => {
                ts.push(t);
                ns.push(n);
            }
            None => groups.push((key, (vec![t], vec![n]))),
        }
    }
    if groups.is_empty() {
        return Err(CliError::Usage("decay CSV has no data rows".into()));
    }
    Ok(groups)
}

/// Linear interpolation of grid samples; points off the grid are refused.
fn interpolate(g: &SpatialGrid, u: &[Complex64], x: f64) -> Result<Complex64, CliError> {
    if let Some(i) = g.index_of(x) {
        return Ok(u[i]);
    }
    if x < g.x_min || x > g.x_max {
        return Err(CliError::Usage(format!("point {x} lies outside the oracle grid [{}, {}]", g.x_min, g.x_max)));
    }
    let s = (x - g.x_min) / g.spacing();
    let i = (s.floor() as usize).min(u.len() - 2);
    let w = s - i as f64;
    Ok(u[i] * (1.0 - w) + u[i + 1] * w)
}
