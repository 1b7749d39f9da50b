//! Bench description files.
//!
//! The format is INI-like with explicit units, one `key = value` pair per
//! line and `#` starting a comment:
//!
//! ```text
//! [source]
//! phi = 0 rad            # relative phase of the two pair terms
//! mapping = o_to_x       # or o_to_y
//!
//! [geometry]             # required section, all four keys required
//! wavelength = 702.2 nm
//! slit_width = 200 um
//! slit_separation = 400 um   # center to center
//! slit_distance = 83 cm
//!
//! [elements]             # every key optional; qwp1 and qwp2 come as a pair
//! qwp1 = 45 deg
//! qwp2 = -45 deg
//! pol1 = absent           # `absent` removes an element explicitly
//!
//! [scan]
//! range = 6 mm           # full scanned width, centered on the axis
//! points = 60
//! peak_rate = 200        # counts per dwell at the bare double-slit peak
//! dwell_scale = 2
//! seed = 7
//! misalignment = 0 deg   # added to the qwp1 angle only
//! tag = delayed-erasure
//! ```
//!
//! Lengths require a `nm`, `um`, `mm`, `cm` or `m` suffix and angles a
//! `deg` or `rad` suffix; bare numbers are rejected so that nobody has to
//! guess what a `45` means. Unknown sections and keys are errors.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use eraserlab_core::scan::centered_positions;
use eraserlab_core::{BenchGeometry, OeMapping, PairSourceSpec, ScanConfig};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    /// A line that cannot be read at all: bad shape, unknown name, or a
    /// value that does not parse. Line and column are 1-based.
    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    /// The file parses but describes an impossible bench.
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
    /// The file could not be read.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A fully resolved bench description with defaults applied. All angles
/// are radians, all lengths meters.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub phi: f64,
    pub mapping: OeMapping,
    pub geometry: BenchGeometry,
    /// Fast-axis angles of the plates behind slit 1 and slit 2.
    pub qwp_angles: Option<(f64, f64)>,
    /// Idler linear-polarizer angle.
    pub polarizer_angle: Option<f64>,
    /// Full scanned width, centered on the optical axis.
    pub range: f64,
    pub points: usize,
    pub peak_rate: f64,
    pub dwell_scale: f64,
    pub seed: u64,
    /// Alignment error added to the qwp1 angle only.
    pub misalignment: f64,
    /// Free-form label copied into every output.
    pub tag: Option<String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let label = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: label.clone(),
            source,
        })?;
        Self::parse_str(&text, &label)
    }

    pub fn parse_str(text: &str, path: &str) -> Result<Self, ConfigError> {
        Parser::new(path).parse(text)
    }

    /// Detector positions implied by `range` and `points`.
    pub fn positions(&self) -> Vec<f64> {
        centered_positions(self.range, self.points)
    }

    pub fn source_spec(&self) -> PairSourceSpec {
        PairSourceSpec {
            phi: self.phi,
            mapping: self.mapping,
        }
    }

    pub fn scan_config(&self) -> ScanConfig {
        ScanConfig {
            geometry: self.geometry,
            phi: self.phi,
            qwp_angles: self.qwp_angles,
            polarizer_angle: self.polarizer_angle,
            peak_rate: self.peak_rate,
            dwell_scale: self.dwell_scale,
            qwp_misalignment: self.misalignment,
            positions: self.positions(),
            seed: self.seed,
        }
    }

    /// Serializes back to the file format in a canonical form: SI units
    /// (m, rad), shortest round-trip float formatting, fixed key order,
    /// optional keys written only when set. Parsing the result yields a
    /// `Config` equal to `self`.
    pub fn to_canonical_string(&self) -> String {
        let mut s = String::new();
        writeln!(s, "[source]").unwrap();
        writeln!(s, "phi = {} rad", self.phi).unwrap();
        let mapping = match self.mapping {
            OeMapping::OToX => "o_to_x",
            OeMapping::OToY => "o_to_y",
        };
        writeln!(s, "mapping = {mapping}").unwrap();
        writeln!(s).unwrap();
        writeln!(s, "[geometry]").unwrap();
        writeln!(s, "wavelength = {} m", self.geometry.wavelength).unwrap();
        writeln!(s, "slit_width = {} m", self.geometry.slit_width).unwrap();
        writeln!(s, "slit_separation = {} m", self.geometry.slit_separation).unwrap();
        writeln!(s, "slit_distance = {} m", self.geometry.slit_to_detector).unwrap();
        if self.qwp_angles.is_some() || self.polarizer_angle.is_some() {
            writeln!(s).unwrap();
            writeln!(s, "[elements]").unwrap();
            if let Some((t1, t2)) = self.qwp_angles {
                writeln!(s, "qwp1 = {t1} rad").unwrap();
                writeln!(s, "qwp2 = {t2} rad").unwrap();
            }
            if let Some(alpha) = self.polarizer_angle {
                writeln!(s, "pol1 = {alpha} rad").unwrap();
            }
        }
        writeln!(s).unwrap();
        writeln!(s, "[scan]").unwrap();
        writeln!(s, "range = {} m", self.range).unwrap();
        writeln!(s, "points = {}", self.points).unwrap();
        writeln!(s, "peak_rate = {}", self.peak_rate).unwrap();
        writeln!(s, "dwell_scale = {}", self.dwell_scale).unwrap();
        writeln!(s, "seed = {}", self.seed).unwrap();
        writeln!(s, "misalignment = {} rad", self.misalignment).unwrap();
        if let Some(tag) = &self.tag {
            writeln!(s, "tag = {tag}").unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Section {
    Source,
    Geometry,
    Elements,
    Scan,
}

impl Section {
    fn name(self) -> &'static str {
        match self {
            Section::Source => "source",
            Section::Geometry => "geometry",
            Section::Elements => "elements",
            Section::Scan => "scan",
        }
    }
}

#[derive(Default)]
struct Partial {
    phi: Option<f64>,
    mapping: Option<OeMapping>,
    wavelength: Option<f64>,
    slit_width: Option<f64>,
    slit_separation: Option<f64>,
    slit_distance: Option<f64>,
    qwp1: Option<f64>,
    qwp2: Option<f64>,
    pol1: Option<f64>,
    range: Option<f64>,
    points: Option<usize>,
    peak_rate: Option<f64>,
    dwell_scale: Option<f64>,
    seed: Option<u64>,
    misalignment: Option<f64>,
    tag: Option<String>,
    saw_geometry: bool,
}

struct Parser<'p> {
    path: &'p str,
    section: Option<Section>,
    seen: HashSet<(Section, &'static str)>,
    partial: Partial,
}

impl<'p> Parser<'p> {
    fn new(path: &'p str) -> Self {
        Self {
            path,
            section: None,
            seen: HashSet::new(),
            partial: Partial::default(),
        }
    }

    fn syntax(&self, line: usize, column: usize, message: impl Into<String>) -> ConfigError {
        ConfigError::Syntax {
            path: self.path.to_string(),
            line,
            column,
            message: message.into(),
        }
    }

    fn semantic(&self, message: impl Into<String>) -> ConfigError {
        ConfigError::Semantic {
            path: self.path.to_string(),
            message: message.into(),
        }
    }

    fn parse(mut self, text: &str) -> Result<Config, ConfigError> {
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let uncommented = match raw_line.find('#') {
                Some(i) => &raw_line[..i],
                None => raw_line,
            };
            let trimmed = uncommented.trim();
            if trimmed.is_empty() {
                continue;
            }
            let lead = uncommented.len() - uncommented.trim_start().len();
            if let Some(rest) = trimmed.strip_prefix('[') {
                self.read_section_header(rest, line_no, lead + 1)?;
            } else {
                self.read_key_value(trimmed, line_no, lead)?;
            }
        }
        self.resolve()
    }

    fn read_section_header(
        &mut self,
        rest: &str,
        line: usize,
        column: usize,
    ) -> Result<(), ConfigError> {
        let Some(name) = rest.strip_suffix(']') else {
            return Err(self.syntax(line, column, "section header must close with `]`"));
        };
        let section = match name.trim() {
            "source" => Section::Source,
            "geometry" => Section::Geometry,
            "elements" => Section::Elements,
            "scan" => Section::Scan,
            other => {
                return Err(self.syntax(
                    line,
                    column,
                    format!(
                        "unknown section `[{other}]`; expected [source], [geometry], \
                         [elements] or [scan]"
                    ),
                ))
            }
        };
        if section == Section::Geometry {
            self.partial.saw_geometry = true;
        }
        self.section = Some(section);
        Ok(())
    }

    fn read_key_value(&mut self, trimmed: &str, line: usize, lead: usize) -> Result<(), ConfigError> {
        let key_col = lead + 1;
        let Some(eq) = trimmed.find('=') else {
            return Err(self.syntax(
                line,
                key_col,
                "expected `key = value` or a `[section]` header",
            ));
        };
        let key = trimmed[..eq].trim();
        if key.is_empty() {
            return Err(self.syntax(line, key_col, "missing key before `=`"));
        }
        let after = &trimmed[eq + 1..];
        let value = after.trim();
        let value_col = lead + eq + 1 + (after.len() - after.trim_start().len()) + 1;
        if value.is_empty() {
            return Err(self.syntax(line, value_col, format!("missing value for `{key}`")));
        }
        let Some(section) = self.section else {
            return Err(self.syntax(
                line,
                key_col,
                format!("key `{key}` appears before any section header"),
            ));
        };
        self.assign(section, key, value, line, key_col, value_col)
    }

    fn assign(
        &mut self,
        section: Section,
        key: &str,
        value: &str,
        line: usize,
        key_col: usize,
        value_col: usize,
    ) -> Result<(), ConfigError> {
        let value_err =
            |s: &Self, msg: String| -> ConfigError { s.syntax(line, value_col, msg) };

        // Canonical key names are 'static so duplicates can be tracked by
        // (section, key) without allocating.
        let known: &[&'static str] = match section {
            Section::Source => &["phi", "mapping"],
            Section::Geometry => &["wavelength", "slit_width", "slit_separation", "slit_distance"],
            Section::Elements => &["qwp1", "qwp2", "pol1"],
            Section::Scan => &[
                "range",
                "points",
                "peak_rate",
                "dwell_scale",
                "seed",
                "misalignment",
                "tag",
            ],
        };
        let Some(&canonical) = known.iter().find(|&&k| k == key) else {
            return Err(self.syntax(
                line,
                key_col,
                format!(
                    "unknown key `{key}` in [{}]; expected one of: {}",
                    section.name(),
                    known.join(", ")
                ),
            ));
        };
        if !self.seen.insert((section, canonical)) {
            return Err(self.syntax(
                line,
                key_col,
                format!("duplicate key `{key}` in [{}]", section.name()),
            ));
        }

        match (section, canonical) {
            (Section::Source, "phi") => {
                self.partial.phi = Some(parse_angle(value).map_err(|m| value_err(self, m))?)
            }
            (Section::Source, "mapping") => {
                self.partial.mapping = Some(match value {
                    "o_to_x" => OeMapping::OToX,
                    "o_to_y" => OeMapping::OToY,
                    other => {
                        return Err(value_err(
                            self,
                            format!("unknown mapping `{other}`; expected o_to_x or o_to_y"),
                        ))
                    }
                })
            }
            (Section::Geometry, "wavelength") => {
                self.partial.wavelength = Some(parse_length(value).map_err(|m| value_err(self, m))?)
            }
            (Section::Geometry, "slit_width") => {
                self.partial.slit_width = Some(parse_length(value).map_err(|m| value_err(self, m))?)
            }
            (Section::Geometry, "slit_separation") => {
                self.partial.slit_separation =
                    Some(parse_length(value).map_err(|m| value_err(self, m))?)
            }
            (Section::Geometry, "slit_distance") => {
                self.partial.slit_distance =
                    Some(parse_length(value).map_err(|m| value_err(self, m))?)
            }
            (Section::Elements, "qwp1") => {
                self.partial.qwp1 = parse_optional_angle(value).map_err(|m| value_err(self, m))?
            }
            (Section::Elements, "qwp2") => {
                self.partial.qwp2 = parse_optional_angle(value).map_err(|m| value_err(self, m))?
            }
            (Section::Elements, "pol1") => {
                self.partial.pol1 = parse_optional_angle(value).map_err(|m| value_err(self, m))?
            }
            (Section::Scan, "range") => {
                self.partial.range = Some(parse_length(value).map_err(|m| value_err(self, m))?)
            }
            (Section::Scan, "points") => {
                let points: usize = value
                    .parse()
                    .map_err(|_| value_err(self, format!("`{value}` is not a point count")))?;
                if points == 0 {
                    return Err(value_err(self, "points must be at least 1".into()));
                }
                self.partial.points = Some(points);
            }
            (Section::Scan, "peak_rate") => {
                let rate = parse_number(value).map_err(|m| value_err(self, m))?;
                if rate <= 0.0 {
                    return Err(value_err(self, "peak_rate must be positive".into()));
                }
                self.partial.peak_rate = Some(rate);
            }
            (Section::Scan, "dwell_scale") => {
                let scale = parse_number(value).map_err(|m| value_err(self, m))?;
                if scale <= 0.0 {
                    return Err(value_err(self, "dwell_scale must be positive".into()));
                }
                self.partial.dwell_scale = Some(scale);
            }
            (Section::Scan, "seed") => {
                self.partial.seed = Some(
                    value
                        .parse()
                        .map_err(|_| value_err(self, format!("`{value}` is not a seed (u64)")))?,
                )
            }
            (Section::Scan, "misalignment") => {
                self.partial.misalignment =
                    Some(parse_angle(value).map_err(|m| value_err(self, m))?)
            }
            (Section::Scan, "tag") => self.partial.tag = Some(value.to_string()),
            _ => unreachable!("key list and dispatch are kept in sync"),
        }
        Ok(())
    }

    fn resolve(self) -> Result<Config, ConfigError> {
        let p = &self.partial;
        if !p.saw_geometry {
            return Err(self.semantic("missing required [geometry] section"));
        }
        let geometry_keys = [
            ("wavelength", p.wavelength),
            ("slit_width", p.slit_width),
            ("slit_separation", p.slit_separation),
            ("slit_distance", p.slit_distance),
        ];
        for (name, value) in geometry_keys {
            if value.is_none() {
                return Err(self.semantic(format!("missing `{name}` in [geometry]")));
            }
        }
        let geometry = BenchGeometry::new(
            p.wavelength.unwrap(),
            p.slit_width.unwrap(),
            p.slit_separation.unwrap(),
            p.slit_distance.unwrap(),
        )
        .map_err(|e| self.semantic(e.to_string()))?;

        let qwp_angles = match (p.qwp1, p.qwp2) {
            (Some(t1), Some(t2)) => Some((t1, t2)),
            (None, None) => None,
            _ => {
                return Err(self.semantic(
                    "qwp1 and qwp2 must be set together; the plates are mounted as a pair",
                ))
            }
        };

        let range = p.range.unwrap_or(6.0e-3);
        if range <= 0.0 {
            return Err(self.semantic(format!("range must be positive, got {range} m")));
        }

        Ok(Config {
            phi: p.phi.unwrap_or(0.0),
            mapping: p.mapping.unwrap_or_default(),
            geometry,
            qwp_angles,
            polarizer_angle: p.pol1,
            range,
            points: p.points.unwrap_or(60),
            peak_rate: p.peak_rate.unwrap_or(200.0),
            dwell_scale: p.dwell_scale.unwrap_or(1.0),
            seed: p.seed.unwrap_or(0),
            misalignment: p.misalignment.unwrap_or(0.0),
            tag: self.partial.tag,
        })
    }
}

/// Splits a value into its numeric part and a trailing alphabetic unit.
fn split_unit(value: &str) -> (&str, &str) {
    let boundary = value
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_alphabetic())
        .last()
        .map(|(i, _)| i)
        .unwrap_or(value.len());
    (value[..boundary].trim(), &value[boundary..])
}

fn parse_number(value: &str) -> Result<f64, String> {
    let parsed: f64 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    if !parsed.is_finite() {
        return Err(format!("`{value}` is not a finite number"));
    }
    Ok(parsed)
}

fn parse_length(value: &str) -> Result<f64, String> {
    let (number, unit) = split_unit(value);
    let scale = match unit {
        "nm" => 1.0e-9,
        "um" => 1.0e-6,
        "mm" => 1.0e-3,
        "cm" => 1.0e-2,
        "m" => 1.0,
        "" => return Err(format!("length `{value}` needs a unit suffix: nm, um, mm, cm or m")),
        other => return Err(format!("unknown length unit `{other}`; use nm, um, mm, cm or m")),
    };
    Ok(parse_number(number)? * scale)
}

fn parse_angle(value: &str) -> Result<f64, String> {
    let (number, unit) = split_unit(value);
    match unit {
        "deg" => Ok(parse_number(number)?.to_radians()),
        "rad" => parse_number(number),
        "" => Err(format!("angle `{value}` needs a unit suffix: deg or rad")),
        other => Err(format!("unknown angle unit `{other}`; use deg or rad")),
    }
}

/// Angle for a removable element: the literal `absent` means the element is
/// not in the beam, anything else must be an angle with a unit.
fn parse_optional_angle(value: &str) -> Result<Option<f64>, String> {
    if value == "absent" {
        return Ok(None);
    }
    parse_angle(value).map(Some)
}
