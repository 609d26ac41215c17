//! Run configuration: flat key = value files, named presets, and
//! construction of the library objects a run needs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use arcmeans::{
    AcquisitionCurve64, Arc64, DiscPhantom, Error, FilterPlan64, Phantom64, ReconGrid64, Result,
    Vec2_64, WindowSpec64,
};

pub const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq)]
pub enum CurveChoice {
    UnitCircle,
    Polar,
    Ellipse { a_axis: f64, b_axis: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowChoice {
    Sharp,
    Rational,
    Plateau,
}

impl WindowChoice {
    pub fn name(self) -> &'static str {
        match self {
            WindowChoice::Sharp => "sharp",
            WindowChoice::Rational => "rational",
            WindowChoice::Plateau => "plateau",
        }
    }
}

/// Everything a forward/reconstruct run needs, as plain values.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub curve: CurveChoice,
    pub s_start: f64,
    pub s_end: f64,
    /// Discs as (cx, cy, radius, amplitude).
    pub phantom: Vec<(f64, f64, f64, f64)>,
    pub n: usize,
    pub extent: f64,
    pub n_a: usize,
    pub n_r: usize,
    pub r_max: f64,
    pub window: WindowChoice,
    pub eps: f64,
    pub order: u32,
    pub filter_dim: u32,
    pub pad: usize,
    pub taper: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            curve: CurveChoice::UnitCircle,
            s_start: 0.0,
            s_end: TAU,
            phantom: vec![(0.0, 0.0, 0.3, 1.0)],
            n: 512,
            extent: 1.0,
            n_a: 512,
            n_r: 512,
            r_max: 2.0,
            window: WindowChoice::Sharp,
            eps: 0.2,
            order: 1,
            filter_dim: 2,
            pad: 2,
            taper: 0.1,
        }
    }
}

/// Named configurations; each maps to one reference reconstruction setup.
pub fn preset(name: &str) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    match name {
        // full unit circle, no window
        "fig1" | "fullcircle" => {}
        // full polar curve, no window; wider radial range to cover the
        // taller bounding box
        "fig2" | "polar" => {
            c.curve = CurveChoice::Polar;
            c.r_max = 2.25;
        }
        // quarter arc, no window
        "fig3" => {
            c.s_end = TAU / 4.0;
        }
        // quarter arc, rational window eps = 0.2, k = 1
        "fig5b" => {
            c.s_end = TAU / 4.0;
            c.window = WindowChoice::Rational;
            c.eps = 0.2;
            c.order = 1;
        }
        // three-quarter arc, plateau window eps = 0.4, k = 2
        "fig12c" => {
            c.s_end = 0.75 * TAU;
            c.window = WindowChoice::Plateau;
            c.eps = 0.4;
            c.order = 2;
        }
        other => {
            return Err(Error::validation(
                "preset",
                format!("unknown preset '{other}'"),
            ))
        }
    }
    Ok(c)
}

impl RunConfig {
    /// Rescale the grid sizes: n = scale, n_a = n_r = scale.
    pub fn at_scale(mut self, scale: usize) -> Self {
        self.n = scale;
        self.n_a = scale;
        self.n_r = scale;
        self
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut c = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::validation(
                    "config",
                    format!("{origin}:{}: expected 'key = value'", lineno + 1),
                )
            })?;
            c.set(key.trim(), value.trim()).map_err(|e| {
                Error::validation("config", format!("{origin}:{}: {e}", lineno + 1))
            })?;
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::validation("config", format!("bad {what}: '{value}'"));
        match key {
            "curve" => {
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                self.curve = match parts.as_slice() {
                    ["unit_circle"] => CurveChoice::UnitCircle,
                    ["polar"] => CurveChoice::Polar,
                    ["ellipse", a, b] => CurveChoice::Ellipse {
                        a_axis: a.parse().map_err(|_| bad("ellipse axis"))?,
                        b_axis: b.parse().map_err(|_| bad("ellipse axis"))?,
                    },
                    _ => return Err(bad("curve")),
                };
            }
            "s_start" => self.s_start = value.parse().map_err(|_| bad(key))?,
            "s_end" => self.s_end = value.parse().map_err(|_| bad(key))?,
            "phantom" => {
                let mut discs = Vec::new();
                for tuple in value.split(')').filter(|t| !t.trim().is_empty()) {
                    let tuple = tuple.trim_start_matches([',', ' ']).trim_start_matches('(');
                    let nums: Vec<f64> = tuple
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| bad("phantom tuple")))
                        .collect::<Result<_>>()?;
                    if nums.len() != 4 {
                        return Err(bad("phantom tuple (need cx,cy,radius,amplitude)"));
                    }
                    discs.push((nums[0], nums[1], nums[2], nums[3]));
                }
                self.phantom = discs;
            }
            "n" => self.n = value.parse().map_err(|_| bad(key))?,
            "extent" => self.extent = value.parse().map_err(|_| bad(key))?,
            "n_a" => self.n_a = value.parse().map_err(|_| bad(key))?,
            "n_r" => self.n_r = value.parse().map_err(|_| bad(key))?,
            "r_max" => self.r_max = value.parse().map_err(|_| bad(key))?,
            "window" => {
                self.window = match value {
                    "sharp" => WindowChoice::Sharp,
                    "rational" => WindowChoice::Rational,
                    "plateau" => WindowChoice::Plateau,
                    _ => return Err(bad(key)),
                }
            }
            "eps" => self.eps = value.parse().map_err(|_| bad(key))?,
            "order" => self.order = value.parse().map_err(|_| bad(key))?,
            "filter_dim" => self.filter_dim = value.parse().map_err(|_| bad(key))?,
            "pad" => self.pad = value.parse().map_err(|_| bad(key))?,
            "taper" => self.taper = value.parse().map_err(|_| bad(key))?,
            other => {
                return Err(Error::validation(
                    "config",
                    format!("unknown key '{other}'"),
                ))
            }
        }
        Ok(())
    }

    /// Serialize back to the flat key = value form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let curve = match &self.curve {
            CurveChoice::UnitCircle => "unit_circle".to_string(),
            CurveChoice::Polar => "polar".to_string(),
            CurveChoice::Ellipse { a_axis, b_axis } => format!("ellipse, {a_axis}, {b_axis}"),
        };
        writeln!(s, "curve = {curve}").unwrap();
        writeln!(s, "s_start = {}", self.s_start).unwrap();
        writeln!(s, "s_end = {}", self.s_end).unwrap();
        let discs: Vec<String> = self
            .phantom
            .iter()
            .map(|(x, y, r, a)| format!("({x}, {y}, {r}, {a})"))
            .collect();
        writeln!(s, "phantom = {}", discs.join(", ")).unwrap();
        writeln!(s, "n = {}", self.n).unwrap();
        writeln!(s, "extent = {}", self.extent).unwrap();
        writeln!(s, "n_a = {}", self.n_a).unwrap();
        writeln!(s, "n_r = {}", self.n_r).unwrap();
        writeln!(s, "r_max = {}", self.r_max).unwrap();
        writeln!(s, "window = {}", self.window.name()).unwrap();
        writeln!(s, "eps = {}", self.eps).unwrap();
        writeln!(s, "order = {}", self.order).unwrap();
        writeln!(s, "filter_dim = {}", self.filter_dim).unwrap();
        writeln!(s, "pad = {}", self.pad).unwrap();
        writeln!(s, "taper = {}", self.taper).unwrap();
        s
    }

    pub fn curve(&self) -> Result<AcquisitionCurve64> {
        Ok(match &self.curve {
            CurveChoice::UnitCircle => AcquisitionCurve64::unit_circle(),
            CurveChoice::Polar => AcquisitionCurve64::polar(),
            CurveChoice::Ellipse { a_axis, b_axis } => {
                AcquisitionCurve64::ellipse(*a_axis, *b_axis)?
            }
        })
    }

    pub fn arc(&self) -> Result<Arc64> {
        Arc64::new(self.curve()?, self.s_start, self.s_end)
    }

    pub fn phantom(&self) -> Result<Phantom64> {
        let discs = self
            .phantom
            .iter()
            .map(|&(x, y, r, a)| DiscPhantom {
                center: Vec2_64::new(x, y),
                radius: r,
                amplitude: a,
            })
            .collect();
        let ph = Phantom64::new(discs)?;
        ph.validate_inside(&self.curve()?)?;
        Ok(ph)
    }

    pub fn window(&self) -> Result<WindowSpec64> {
        let b = self.s_end - self.s_start;
        Ok(match self.window {
            WindowChoice::Sharp => WindowSpec64::sharp(b),
            WindowChoice::Rational => WindowSpec64::rational(self.eps, self.order, b)?,
            WindowChoice::Plateau => WindowSpec64::plateau(self.eps, self.order, b)?,
        })
    }

    pub fn filter_plan(&self) -> Result<FilterPlan64> {
        FilterPlan64::new(self.filter_dim, 2 * self.n_r, self.pad, self.taper)
    }

    pub fn grid(&self) -> Result<ReconGrid64> {
        ReconGrid64::new(self.n, self.extent)
    }

    /// Cross-field checks beyond what each component validates.
    pub fn validate(&self) -> Result<()> {
        let curve = self.curve()?;
        // r_max must cover the curve's bounding box so no circle carrying
        // data is truncated
        let mut lo = Vec2_64::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2_64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for i in 0..1024 {
            let p = curve.point(curve.period() * i as f64 / 1024.0);
            lo = Vec2_64::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2_64::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let diameter = (hi.x - lo.x).max(hi.y - lo.y);
        if self.r_max < diameter - 1e-9 {
            return Err(Error::validation(
                "config",
                format!(
                    "r_max = {} is below the curve bounding-box diameter {diameter:.4}",
                    self.r_max
                ),
            ));
        }
        self.arc()?;
        self.phantom()?;
        self.window()?;
        self.filter_plan()?;
        self.grid()?;
        Ok(())
    }
}
