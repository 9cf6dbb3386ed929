//! Built-in reference configurations, one per figure.

use clap::ValueEnum;
use uavcovert_core::{EnvModel, SearchOptions};

use crate::config::{Angle, GeometryConfig, Power, RadioConfig, RunConfig, Scale, SweepConfig, SweepVariable};
use crate::error::CliError;

/// Figures whose data the `figure` command regenerates. Each doubles as a
/// `--preset` name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Figure {
    /// Optimal location while the receiver moves towards the warden.
    #[value(name = "location_vs_L")]
    LocationVsL,
    /// Optimal and heuristic SNR against the covertness level.
    SnrVsEps,
    /// Optimal and heuristic SNR against the minimum elevation angle.
    SnrVsThetaMin,
    /// Vertical mode: candidate and optimal heights against the covertness
    /// level.
    HeightVsEps,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::LocationVsL => "location_vs_L",
            Figure::SnrVsEps => "snr_vs_eps",
            Figure::SnrVsThetaMin => "snr_vs_theta_min",
            Figure::HeightVsEps => "height_vs_eps",
        }
    }
}

fn radio_dbm(p_max: f64, sigma2_b: f64, sigma2_w: f64, epsilon: f64) -> RadioConfig {
    RadioConfig {
        p_max: Power::Dbm(p_max),
        sigma2_b: Power::Dbm(sigma2_b),
        sigma2_w: Power::Dbm(sigma2_w),
        n: 200,
        epsilon,
    }
}

fn planar(l: f64, d_min: f64, d_max: f64, theta_min_deg: f64) -> GeometryConfig {
    GeometryConfig::Planar { l, d_min, d_max, theta_min: Angle::Deg(theta_min_deg) }
}

fn sweep(variable: SweepVariable, from: f64, to: f64, steps: usize, scale: Scale) -> Option<SweepConfig> {
    Some(SweepConfig { variable, from: Some(from), to: Some(to), steps: Some(steps), scale, values: None })
}

pub fn preset(figure: Figure) -> RunConfig {
    let base = |radio, geometry, sweep| RunConfig {
        env: EnvModel::suburban(),
        radio,
        geometry,
        sweep,
        search: SearchOptions::default(),
        output: None,
    };
    match figure {
        // Power and noise are given in plain dB, read as dB re 1 W. Only
        // ratios of the three enter the solution, so dBW and dBm agree.
        Figure::LocationVsL => base(
            RadioConfig {
                p_max: Power::Db(20.0),
                sigma2_b: Power::Db(-90.0),
                sigma2_w: Power::Db(-60.0),
                n: 200,
                epsilon: 0.01,
            },
            planar(10_000.0, 1000.0, 3000.0, 30.0),
            Some(SweepConfig {
                variable: SweepVariable::L,
                from: None,
                to: None,
                steps: None,
                scale: Scale::Linear,
                values: Some(vec![10_000.0, 9500.0, 7000.0, 4000.0, 3000.0, 2000.0, 1000.0, 500.0]),
            }),
        ),
        Figure::SnrVsEps => base(
            radio_dbm(10.0, -90.0, -60.0, 0.1),
            planar(10_000.0, 1000.0, 3000.0, 22.5),
            sweep(SweepVariable::Epsilon, 0.05, 0.5, 10, Scale::Linear),
        ),
        Figure::SnrVsThetaMin => base(
            radio_dbm(10.0, -90.0, -60.0, 0.1),
            planar(10_000.0, 1000.0, 3000.0, 0.0),
            sweep(SweepVariable::ThetaMinDeg, 0.0, 90.0, 19, Scale::Linear),
        ),
        // No upper height or receiver noise is given for this setup; 500 m and
        // -90 dBm are assumed (the case sequence does not depend on the
        // receiver noise).
        Figure::HeightVsEps => RunConfig {
            env: EnvModel { a: 4.88, b: 0.429, xi_los: -3.0, xi_nlos: -3.0 },
            ..base(
                radio_dbm(10.0, -90.0, -40.0, 0.1),
                GeometryConfig::Vertical { l: 1000.0, h_min: 100.0, h_max: 500.0 },
                sweep(SweepVariable::Epsilon, 1e-3, 0.3, 25, Scale::Log),
            )
        },
    }
}

pub fn by_name(name: &str) -> Result<RunConfig, CliError> {
    Figure::from_str(name, false).map(preset).map_err(|_| {
        let known: Vec<&str> = Figure::value_variants().iter().map(|f| f.name()).collect();
        CliError::config("--preset", format!("unknown preset `{name}`; known: {}", known.join(", ")))
    })
}
