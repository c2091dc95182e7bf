//! Experiment configuration: the JSON config-file schema and the parsers
//! for the compact flag syntaxes (complex numbers, zero lists, weight
//! kinds, exponent sets).

use std::path::PathBuf;

use num_complex::Complex64;
use serde::Deserialize;

use framelab_core::interp::InterpolationProblemInput;

/// Algorithm identifier for the one PRNG the tool ever uses
/// (ChaCha12, 64-bit seed), recorded in output metadata.
pub const PRNG_ID: &str = "chacha12-64";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// Weighted pointwise sum (1−μ²)·Σ_{λ∈Λ} μ^{2λ} at μ = √(1−x).
    Pointwise,
    /// x·S(x) with S(x) = Σ_{n≥2} exp(−x·n·ln n).
    Xsx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WcoCheck {
    Invert,
    Unitary,
    Cowen,
    Isometry,
    OrbitFrame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelCheck {
    Parseval,
    Jordan,
    Spectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InterpCheck {
    MinNorm,
    Mcphail,
    Riesz,
}

/// Top-level config file: one experiment plus the common output options.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub experiment: ExperimentSpec,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub expect: Option<Expectation>,
}

/// One experiment. Externally tagged so that each payload struct can
/// reject unknown fields.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentSpec {
    Carleson(CarlesonSpec),
    FrameBounds(FrameBoundsSpec),
    MuntzSweep(MuntzSweepSpec),
    Wco(WcoSpec),
    Model(ModelSpec),
    Interp(InterpSpec),
}

impl ExperimentSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ExperimentSpec::Carleson(_) => "carleson",
            ExperimentSpec::FrameBounds(_) => "frame-bounds",
            ExperimentSpec::MuntzSweep(_) => "muntz-sweep",
            ExperimentSpec::Wco(_) => "wco",
            ExperimentSpec::Model(_) => "model",
            ExperimentSpec::Interp(_) => "interp",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarlesonSpec {
    /// Points as [re, im] pairs.
    pub points: Vec<[f64; 2]>,
    #[serde(default)]
    pub delta_min: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameBoundsSpec {
    /// Diagonal eigenvalues as [re, im] pairs.
    pub mus: Vec<[f64; 2]>,
    /// Generator entries as [re, im] pairs, one per eigenvalue.
    pub weights: Vec<[f64; 2]>,
    #[serde(default)]
    pub n_max: Option<u64>,
    /// Keep only every `stride`-th orbit power.
    #[serde(default)]
    pub stride: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuntzSweepSpec {
    /// Exponent set: "naturals", "ceil", "primes", or "every-nth:N".
    #[serde(default)]
    pub set: Option<String>,
    #[serde(default)]
    pub quantity: Option<Quantity>,
    #[serde(default)]
    pub xs: Option<Vec<f64>>,
    #[serde(default)]
    pub n_max: Option<u64>,
    /// Absolute tail tolerance for the xsx summation.
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum WeightSpec {
    One,
    Kernel {
        point: [f64; 2],
    },
    Bn {
        point: [f64; 2],
        constant: Option<[f64; 2]>,
    },
    Poly {
        coefficients: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WcoSpec {
    /// Coefficients (a, b, c, d) of φ(z) = (az + b)/(cz + d) as [re, im].
    pub phi: [[f64; 2]; 4],
    #[serde(default)]
    pub weight: Option<WeightSpec>,
    #[serde(default)]
    pub degree: Option<usize>,
    pub check: WcoCheck,
    #[serde(default)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroSpec {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default = "default_mult")]
    pub mult: u32,
}

fn default_mult() -> u32 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub zeros: Vec<ZeroSpec>,
    #[serde(default)]
    pub cutoff: Option<usize>,
    pub check: ModelCheck,
    /// Number of random coordinate draws for the parseval check.
    #[serde(default)]
    pub draws: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpSpec {
    pub problem: InterpolationProblemInput,
    /// Overrides the degree recorded in the problem.
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub check: Option<InterpCheck>,
    #[serde(default)]
    pub delta_min: Option<f64>,
    #[serde(default)]
    pub band_ratio_min: Option<f64>,
    #[serde(default)]
    pub condition_gate: Option<f64>,
}

pub fn to_complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Parses one complex token: `1`, `-0.5`, `0.3-0.2i`, `0.5i`, `i`, `-i`,
/// including exponent notation (`1e-3+2e-4i`).
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let t = token.trim();
    if t.is_empty() {
        return Err("empty complex number".to_string());
    }
    let fail = |_| format!("cannot parse `{t}` as a complex number");
    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('I')) {
        // Split `re±im` at the last sign that is not an exponent sign.
        for (idx, ch) in body.char_indices().rev() {
            if (ch == '+' || ch == '-') && idx > 0 {
                let prev = body.as_bytes()[idx - 1];
                if prev != b'e' && prev != b'E' {
                    let re: f64 = body[..idx].parse().map_err(fail)?;
                    let im_part = &body[idx..];
                    let im: f64 = match im_part {
                        "+" => 1.0,
                        "-" => -1.0,
                        _ => im_part.parse().map_err(fail)?,
                    };
                    return Ok(Complex64::new(re, im));
                }
            }
        }
        let im: f64 = match body {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => body.parse().map_err(fail)?,
        };
        return Ok(Complex64::new(0.0, im));
    }
    let re: f64 = t.parse().map_err(fail)?;
    Ok(Complex64::new(re, 0.0))
}

pub fn parse_complex_list(list: &str) -> Result<Vec<Complex64>, String> {
    list.split(',').map(parse_complex).collect()
}

pub fn complex_to_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn parse_pairs(list: &str) -> Result<Vec<[f64; 2]>, String> {
    Ok(parse_complex_list(list)?
        .into_iter()
        .map(complex_to_pair)
        .collect())
}

/// `--phi a,b,c,d`.
pub fn parse_phi(list: &str) -> Result<[[f64; 2]; 4], String> {
    let values = parse_pairs(list)?;
    <[[f64; 2]; 4]>::try_from(values)
        .map_err(|v: Vec<_>| format!("--phi needs exactly 4 coefficients, got {}", v.len()))
}

/// `--weight-kind one | kernel:p | bn:p[,c] | poly:c0,c1,...`.
pub fn parse_weight_kind(text: &str) -> Result<WeightSpec, String> {
    let (kind, args) = match text.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a)),
        None => (text.trim(), None),
    };
    match (kind, args) {
        ("one", None) => Ok(WeightSpec::One),
        ("one", Some(_)) => Err("weight kind `one` takes no parameters".to_string()),
        ("kernel", Some(a)) => Ok(WeightSpec::Kernel {
            point: complex_to_pair(parse_complex(a)?),
        }),
        ("bn", Some(a)) => {
            let parts = parse_complex_list(a)?;
            match parts.as_slice() {
                [p] => Ok(WeightSpec::Bn {
                    point: complex_to_pair(*p),
                    constant: None,
                }),
                [p, c] => Ok(WeightSpec::Bn {
                    point: complex_to_pair(*p),
                    constant: Some(complex_to_pair(*c)),
                }),
                _ => Err("weight kind `bn` takes `bn:p` or `bn:p,c`".to_string()),
            }
        }
        ("poly", Some(a)) => Ok(WeightSpec::Poly {
            coefficients: parse_pairs(a)?,
        }),
        ("kernel" | "bn" | "poly", None) => {
            Err(format!("weight kind `{kind}` needs parameters after `:`"))
        }
        _ => Err(format!(
            "unknown weight kind `{kind}` (expected one, kernel:p, bn:p,c, or poly:c0,c1,...)"
        )),
    }
}

/// `--zeros re,im[:mult],re,im[:mult],...` — pairs of comma-separated
/// fields where the second may carry a `:mult` suffix.
pub fn parse_zeros(text: &str) -> Result<Vec<ZeroSpec>, String> {
    let fields: Vec<&str> = text.split(',').collect();
    if !fields.len().is_multiple_of(2) {
        return Err(format!(
            "zeros come as re,im[:mult] pairs; got {} comma-separated fields",
            fields.len()
        ));
    }
    let mut zeros = Vec::with_capacity(fields.len() / 2);
    for chunk in fields.chunks_exact(2) {
        let re: f64 = chunk[0]
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse `{}` as a real part", chunk[0]))?;
        let (im_text, mult_text) = match chunk[1].split_once(':') {
            Some((i, m)) => (i, Some(m)),
            None => (chunk[1], None),
        };
        let im: f64 = im_text
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse `{im_text}` as an imaginary part"))?;
        let mult: u32 = match mult_text {
            Some(m) => m
                .trim()
                .parse()
                .map_err(|_| format!("cannot parse `{m}` as a multiplicity"))?,
            None => 1,
        };
        zeros.push(ZeroSpec { re, im, mult });
    }
    Ok(zeros)
}

pub fn parse_f64_list(list: &str) -> Result<Vec<f64>, String> {
    list.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse `{tok}` as a number"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_real_tokens() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), c(-0.5, 0.0));
        assert_eq!(parse_complex(" 2.5 ").unwrap(), c(2.5, 0.0));
        assert_eq!(parse_complex("1e-3").unwrap(), c(1e-3, 0.0));
    }

    #[test]
    fn parses_imaginary_tokens() {
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.5i").unwrap(), c(0.0, 0.5));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
    }

    #[test]
    fn parses_full_complex_tokens() {
        assert_eq!(parse_complex("0.3-0.2i").unwrap(), c(0.3, -0.2));
        assert_eq!(parse_complex("-1+i").unwrap(), c(-1.0, 1.0));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), c(1e-3, 2e-4));
        assert_eq!(parse_complex("-1e-2-3e-1i").unwrap(), c(-1e-2, -3e-1));
    }

    #[test]
    fn rejects_malformed_complex_tokens() {
        assert!(parse_complex("").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("1+2j").is_err());
    }

    #[test]
    fn parses_complex_lists_and_phi() {
        let list = parse_complex_list("0.5,-0.25,0.3+0.1i").unwrap();
        assert_eq!(list, vec![c(0.5, 0.0), c(-0.25, 0.0), c(0.3, 0.1)]);
        let phi = parse_phi("-1,0.65,-0.65,1").unwrap();
        assert_eq!(phi, [[-1.0, 0.0], [0.65, 0.0], [-0.65, 0.0], [1.0, 0.0]]);
        assert!(parse_phi("1,2,3").is_err());
        assert!(parse_phi("1,2,3,4,5").is_err());
    }

    #[test]
    fn parses_weight_kinds() {
        assert!(matches!(parse_weight_kind("one").unwrap(), WeightSpec::One));
        match parse_weight_kind("kernel:0.4").unwrap() {
            WeightSpec::Kernel { point } => assert_eq!(point, [0.4, 0.0]),
            other => panic!("unexpected {other:?}"),
        }
        match parse_weight_kind("bn:0.65,0.5+0.5i").unwrap() {
            WeightSpec::Bn { point, constant } => {
                assert_eq!(point, [0.65, 0.0]);
                assert_eq!(constant, Some([0.5, 0.5]));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_weight_kind("poly:1,-1").unwrap() {
            WeightSpec::Poly { coefficients } => {
                assert_eq!(coefficients, vec![[1.0, 0.0], [-1.0, 0.0]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_weight_kind("one:x").is_err());
        assert!(parse_weight_kind("kernel").is_err());
        assert!(parse_weight_kind("gauss:1").is_err());
    }

    #[test]
    fn parses_zero_lists() {
        let zeros = parse_zeros("0.3,0,0.5,0:2,-0.1,0.2:3").unwrap();
        assert_eq!(zeros.len(), 3);
        assert_eq!((zeros[0].re, zeros[0].im, zeros[0].mult), (0.3, 0.0, 1));
        assert_eq!((zeros[1].re, zeros[1].im, zeros[1].mult), (0.5, 0.0, 2));
        assert_eq!((zeros[2].re, zeros[2].im, zeros[2].mult), (-0.1, 0.2, 3));
        assert!(parse_zeros("0.3,0,0.5").is_err());
        assert!(parse_zeros("0.3,0:x").is_err());
    }

    #[test]
    fn config_file_rejects_unknown_fields() {
        let good = r#"{"experiment": {"carleson": {"points": [[0.5, 0.0]]}}}"#;
        let file: ConfigFile = serde_json::from_str(good).unwrap();
        assert_eq!(file.experiment.kind(), "carleson");

        let bad = r#"{"experiment": {"carleson": {"points": [], "bogus": 1}}}"#;
        let err = serde_json::from_str::<ConfigFile>(bad).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");

        let bad_top = r#"{"experiment": {"carleson": {"points": []}}, "extra": true}"#;
        assert!(serde_json::from_str::<ConfigFile>(bad_top).is_err());
    }

    #[test]
    fn experiment_kinds_round_trip() {
        let text = r#"{
            "experiment": {
                "wco": {
                    "phi": [[-1, 0], [0.65, 0], [-0.65, 0], [1, 0]],
                    "weight": {"bn": {"point": [0.65, 0]}},
                    "check": "unitary"
                }
            },
            "format": "json",
            "expect": "pass"
        }"#;
        let file: ConfigFile = serde_json::from_str(text).unwrap();
        assert_eq!(file.experiment.kind(), "wco");
        assert_eq!(file.format, Some(OutputFormat::Json));
        assert_eq!(file.expect, Some(Expectation::Pass));
    }
}
