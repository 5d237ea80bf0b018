use std::io::{self, Write};
use std::path::Path;

use blaschke_core::interpolation::CheckOutcome;
use blaschke_core::{BlaschkeProduct, Complex64, DiskPoint, TraceStep};
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::CliError;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ZeroValue {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub angle: f64,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CheckValue {
    pub passed: bool,
    pub worst: f64,
    pub threshold: f64,
}

impl From<CheckOutcome> for CheckValue {
    fn from(c: CheckOutcome) -> Self {
        CheckValue {
            passed: c.passed,
            worst: c.worst,
            threshold: c.threshold,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Checks {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nodes: Option<CheckValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<CheckValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub targets: Option<CheckValue>,
    pub separation: CheckValue,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub near_one: Option<CheckValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub radial_rays: Option<CheckValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub zero_localization: Option<CheckValue>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub rotation: ComplexValue,
    pub zeros: Vec<ZeroValue>,
    pub measures: Vec<f64>,
    pub delta: f64,
    pub error: f64,
    pub iterations: usize,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub initial_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checks: Option<Checks>,
}

impl ResultFile {
    pub fn from_product(product: &BlaschkeProduct) -> Self {
        let r = product.rotation();
        ResultFile {
            rotation: ComplexValue { re: r.re, im: r.im },
            zeros: product
                .zeros()
                .iter()
                .map(|z| ZeroValue {
                    re: z.value().re,
                    im: z.value().im,
                    radius: z.radius(),
                    angle: z.angle().radians(),
                })
                .collect(),
            measures: Vec::new(),
            delta: product.separation_constant(),
            error: 0.0,
            iterations: 0,
            converged: true,
            initial_radius: None,
            degree: None,
            checks: None,
        }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    /// Rebuilds the product from `re`/`im`; `radius` and `angle` are
    /// informational.
    pub fn product(&self) -> Result<BlaschkeProduct, CliError> {
        let zeros = self
            .zeros
            .iter()
            .map(|z| DiskPoint::new(Complex64::new(z.re, z.im)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BlaschkeProduct::new(
            Complex64::new(self.rotation.re, self.rotation.im),
            zeros,
        )?)
    }
}

/// One line of a trace file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TraceRecord {
    pub iteration: usize,
    pub moved_index: Option<usize>,
    pub new_radius: Option<f64>,
    pub radii: Vec<f64>,
    pub measures: Vec<f64>,
    pub error: f64,
    pub delta: f64,
}

impl TraceRecord {
    pub fn new(step: &TraceStep, delta: f64) -> Self {
        TraceRecord {
            iteration: step.iteration,
            moved_index: step.moved_index,
            new_radius: step.new_radius,
            radii: step.radii.clone(),
            measures: step.measures.values().to_vec(),
            error: step.error,
            delta,
        }
    }
}

/// Writes every float with 17 significant digits, which round-trips any
/// finite `f64` exactly.
struct Digits17<F>(F);

impl<F: Formatter> Formatter for Digits17<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("serializing to memory");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(CompactFormatter));
    value.serialize(&mut ser).expect("serializing to memory");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}
