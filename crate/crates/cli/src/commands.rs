//! The four subcommands: forward projection, single reconstruction,
//! experiment sweeps, and report generation over a directory of runs.

use std::fs;
use std::path::Path;

use arcmeans::io::{read_image, write_csv, write_image, write_sinogram};
use arcmeans::{
    artifact_amplitude, measure_jump, predicted_artifact_circles, reconstruct, sample_sinogram,
    sigma0, Covector, EdgeProbe, Error, RasterImage64, Result, Vec2_64,
};

use crate::config::{RunConfig, WindowChoice};

/// Compute the analytic sinogram and write `<out>/sinogram.{f64,json}`.
pub fn cmd_forward(config: &RunConfig, out: &Path) -> Result<()> {
    config.validate()?;
    fs::create_dir_all(out)?;
    let sino = sample_sinogram(
        &config.phantom()?,
        &config.arc()?,
        config.n_a,
        config.n_r,
        config.r_max,
    )?;
    write_sinogram(&sino, &out.join("sinogram"))?;
    eprintln!("wrote {}", out.join("sinogram.f64").display());
    Ok(())
}

fn run_reconstruction(config: &RunConfig) -> Result<RasterImage64> {
    let arc = config.arc()?;
    let sino = sample_sinogram(&config.phantom()?, &arc, config.n_a, config.n_r, config.r_max)?;
    reconstruct(
        &sino,
        &arc,
        &config.window()?,
        &config.filter_plan()?,
        &config.grid()?,
    )
}

fn write_run(config: &RunConfig, out: &Path, stem_name: &str) -> Result<()> {
    let image = run_reconstruction(config)?;
    let stem = out.join(stem_name);
    write_image(&image, &stem, None, stem_name)?;
    fs::write(out.join(format!("{stem_name}.cfg")), config.to_text())?;
    let profile = arcmeans::line_profile(&image, 0.0);
    let rows: Vec<Vec<String>> = profile
        .iter()
        .map(|(x, v)| vec![format!("{x}"), format!("{v}")])
        .collect();
    write_csv(&out.join(format!("{stem_name}_profile.csv")), &["x", "value"], &rows)?;
    Ok(())
}

/// Reconstruct one configuration; writes the image triplet, the run config,
/// and the central-horizontal-line profile CSV.
pub fn cmd_reconstruct(config: &RunConfig, out: &Path) -> Result<()> {
    config.validate()?;
    fs::create_dir_all(out)?;
    write_run(config, out, "reconstruction")?;
    eprintln!("wrote {}", out.join("reconstruction.f64").display());
    Ok(())
}

/// The parameter sweep behind an experiment name, as (label, config) pairs.
pub fn experiment_runs(name: &str, scale: usize) -> Result<Vec<(String, RunConfig)>> {
    if ![256, 512, 1024, 2048].contains(&scale) {
        return Err(Error::validation(
            "experiment",
            format!("scale must be one of 256, 512, 1024, 2048; got {scale}"),
        ));
    }
    let base = match name {
        "exp1" => crate::config::preset("fig3")?,
        "exp2" | "exp3" => {
            let mut c = crate::config::preset("fig3")?;
            c.s_end = 0.75 * crate::config::TAU;
            c
        }
        "fullcircle" => crate::config::preset("fullcircle")?,
        "polar" => crate::config::preset("polar")?,
        other => {
            return Err(Error::validation(
                "experiment",
                format!("unknown experiment '{other}'"),
            ))
        }
    }
    .at_scale(scale);

    let mut runs = Vec::new();
    let mut push = |label: String, window: WindowChoice, eps: f64, order: u32| {
        let mut c = base.clone();
        c.window = window;
        c.eps = eps;
        c.order = order;
        runs.push((label, c));
    };

    match name {
        // sharp baseline, eps sweep at k = 1, order sweep at eps = 0.2
        "exp1" | "exp2" => {
            push("sharp".into(), WindowChoice::Sharp, 0.2, 1);
            for eps in [0.05, 0.2, 1.0] {
                push(
                    format!("rational_e{eps}_k1"),
                    WindowChoice::Rational,
                    eps,
                    1,
                );
            }
            for k in [2, 3] {
                push(
                    format!("rational_e0.2_k{k}"),
                    WindowChoice::Rational,
                    0.2,
                    k,
                );
            }
        }
        // sharp baseline plus the plateau eps x order grid
        "exp3" => {
            push("sharp".into(), WindowChoice::Sharp, 0.25, 1);
            for eps in [0.1, 0.25, 0.4] {
                for k in [1, 2] {
                    push(
                        format!("plateau_e{eps}_k{k}"),
                        WindowChoice::Plateau,
                        eps,
                        k,
                    );
                }
            }
        }
        "fullcircle" | "polar" => {
            push("sharp".into(), WindowChoice::Sharp, 0.2, 1);
        }
        _ => unreachable!(),
    }
    Ok(runs)
}

/// Run a named sweep, write every reconstruction, then the analysis report.
pub fn cmd_experiment(name: &str, scale: usize, out: &Path) -> Result<()> {
    let runs = experiment_runs(name, scale)?;
    fs::create_dir_all(out)?;
    let total = runs.len();
    for (i, (label, config)) in runs.iter().enumerate() {
        config.validate()?;
        eprintln!("[{}/{total}] {name}/{label}", i + 1);
        write_run(config, out, label)?;
    }
    cmd_analyze(out)?;
    Ok(())
}

struct RunReport {
    label: String,
    window: String,
    eps: f64,
    order: u32,
    jump_45: f64,
    jump_135: f64,
    sigma0_45: Option<f64>,
    sigma0_135: Option<f64>,
    circles: Vec<(f64, f64)>, // (radius, amplitude)
}

fn analyze_run(label: &str, config: &RunConfig, image: &RasterImage64) -> Result<RunReport> {
    let arc = config.arc()?;
    let phantom = config.phantom()?;
    let window = config.window()?;
    let disc = phantom.discs()[0];
    let exclusion = 4.0 * image.pixel_size();

    let probe_at = |deg: f64| -> EdgeProbe<f64> {
        let a = deg.to_radians();
        let dir = Vec2_64::new(a.cos(), a.sin());
        EdgeProbe {
            location: disc.center + dir * disc.radius,
            normal: dir,
            half_width: 0.08,
        }
    };
    let sym_at = |deg: f64| -> Option<f64> {
        let a = deg.to_radians();
        let dir = Vec2_64::new(a.cos(), a.sin());
        let cov = Covector {
            x: disc.center + dir * disc.radius,
            xi: dir,
        };
        sigma0(&arc, &window, &cov).ok()
    };

    let mut circles = Vec::new();
    for c in predicted_artifact_circles(&phantom, &arc) {
        let amp = artifact_amplitude(image, &c, &phantom, exclusion)?;
        circles.push((c.radius, amp));
    }

    Ok(RunReport {
        label: label.to_string(),
        window: config.window.name().to_string(),
        eps: config.eps,
        order: config.order,
        jump_45: measure_jump(image, &probe_at(45.0))?,
        jump_135: measure_jump(image, &probe_at(135.0))?,
        sigma0_45: sym_at(45.0),
        sigma0_135: sym_at(135.0),
        circles,
    })
}

/// Scan a directory of runs (`<label>.cfg` + image triplets) and write
/// `report.csv`: one row per run with jump estimates, predicted symbol
/// values, and artifact amplitudes per predicted circle.
pub fn cmd_analyze(dir: &Path) -> Result<()> {
    let mut labels: Vec<String> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().into_string().ok()?;
            name.strip_suffix(".cfg").map(str::to_string)
        })
        .collect();
    labels.sort();
    if labels.is_empty() {
        return Err(Error::validation(
            "analyze",
            format!("no run configs (*.cfg) found in {}", dir.display()),
        ));
    }

    let mut reports = Vec::new();
    for label in &labels {
        let config = RunConfig::load(&dir.join(format!("{label}.cfg")))?;
        let image = read_image(&dir.join(label))?;
        reports.push(analyze_run(label, &config, &image)?);
    }

    let max_circles = reports.iter().map(|r| r.circles.len()).max().unwrap_or(0);
    let mut columns = vec![
        "run".to_string(),
        "window".to_string(),
        "eps".to_string(),
        "order".to_string(),
        "jump_deg45".to_string(),
        "jump_deg135".to_string(),
        "sigma0_deg45".to_string(),
        "sigma0_deg135".to_string(),
    ];
    for i in 0..max_circles {
        columns.push(format!("circle{}_radius", i + 1));
        columns.push(format!("circle{}_amp", i + 1));
    }
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();

    let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.6}"));
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let mut row = vec![
                r.label.clone(),
                r.window.clone(),
                format!("{}", r.eps),
                format!("{}", r.order),
                format!("{:.6}", r.jump_45),
                format!("{:.6}", r.jump_135),
                opt(r.sigma0_45),
                opt(r.sigma0_135),
            ];
            for i in 0..max_circles {
                match r.circles.get(i) {
                    Some((radius, amp)) => {
                        row.push(format!("{radius:.6}"));
                        row.push(format!("{amp:.6}"));
                    }
                    None => {
                        row.push(String::new());
                        row.push(String::new());
                    }
                }
            }
            row
        })
        .collect();

    write_csv(&dir.join("report.csv"), &column_refs, &rows)?;
    eprintln!("wrote {}", dir.join("report.csv").display());
    Ok(())
}
