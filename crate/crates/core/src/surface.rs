//! Surface input data: twisted Hodge diamonds, deformation inputs, presets
//! and the JSON dataset format.
//!
//! JSON layout:
//!
//! ```json
//! {"name": "hopf", "max_power": 2,
//!  "diamonds": [[[1,1,0],[0,0,0],[0,1,1]], ...],
//!  "nested_diamonds": [...],
//!  "deformation": {"hT": [0,20,0], "hO": [1,0,1], "hW2": [1,0,1], "connected": true},
//!  "kahler_symmetric": false,
//!  "betti": [1,1,0,1,1]}
//! ```
//!
//! `diamonds[k][p][q]` is `h^{p,q}(S, L^k)`; `nested_diamonds[j][p][q]` is
//! `h^{p,q}(S, L^j (x) L')`. Everything after `diamonds` is optional.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed dataset: {0}")]
    Parse(String),
    #[error("dataset does not match the schema: {0}")]
    Schema(String),
    #[error("invalid dataset: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("unknown preset `{0}` (available: {list})", list = PRESET_NAMES.join(", "))]
    UnknownPreset(String),
}

/// Highest power of `L` stored in the built-in presets.
pub const PRESET_MAX_POWER: u32 = 64;

pub const PRESET_NAMES: [&str; 9] = [
    "hopf",
    "inoue",
    "kodaira_secondary",
    "k3",
    "torus",
    "enriques",
    "bielliptic_ord2",
    "bielliptic_ord3",
    "p2",
];

/// `h[p][q] = h^{p,q}(S, M)` for a fixed line bundle `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SurfaceDiamond {
    pub h: [[u64; 3]; 3],
}

impl SurfaceDiamond {
    pub const fn new(h: [[u64; 3]; 3]) -> Self {
        SurfaceDiamond { h }
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.h[p][q]
    }

    pub fn transpose(&self) -> Self {
        let mut h = [[0u64; 3]; 3];
        for (p, row) in h.iter_mut().enumerate() {
            for (q, v) in row.iter_mut().enumerate() {
                *v = self.h[q][p];
            }
        }
        SurfaceDiamond { h }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().flatten().all(|&v| v == 0)
    }

    /// `sum_{p+q=i} h^{p,q}` for `i = 0..=4`.
    pub fn row_sums(&self) -> [u64; 5] {
        let mut b = [0u64; 5];
        for p in 0..3 {
            for q in 0..3 {
                b[p + q] += self.h[p][q];
            }
        }
        b
    }

    /// `chi(S, Omega^p (x) M) = sum_q (-1)^q h^{p,q}`.
    pub fn holomorphic_euler_characteristic(&self, p: usize) -> i64 {
        (0..3)
            .map(|q| if q % 2 == 0 { self.h[p][q] as i64 } else { -(self.h[p][q] as i64) })
            .sum()
    }
}

/// `k -> h^{p,q}(S, L^k)` for `k = 0..=max_power`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TwistedTable {
    diamonds: Vec<SurfaceDiamond>,
}

impl TwistedTable {
    pub fn new(diamonds: Vec<SurfaceDiamond>) -> Self {
        TwistedTable { diamonds }
    }

    /// The same diamond for every `k = 0..=max_power`, as for `L = O`.
    pub fn constant(d: SurfaceDiamond, max_power: u32) -> Self {
        TwistedTable {
            diamonds: vec![d; max_power as usize + 1],
        }
    }

    pub fn diamonds(&self) -> &[SurfaceDiamond] {
        &self.diamonds
    }

    pub fn diamond(&self, k: u32) -> Option<&SurfaceDiamond> {
        self.diamonds.get(k as usize)
    }

    /// Largest stored power, or `None` for an empty table.
    pub fn max_power(&self) -> Option<u32> {
        self.diamonds.len().checked_sub(1).map(|k| k as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.diamonds.is_empty()
    }
}

/// Cohomology dimensions feeding the deformation formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeformationInput {
    /// `h^i(S, T_S)`.
    #[serde(rename = "hT")]
    pub h_tangent: [u64; 3],
    /// `h^{0,i}(S)`.
    #[serde(rename = "hO")]
    pub h_structure: [u64; 3],
    /// `h^i(S, wedge^2 T_S)`.
    #[serde(rename = "hW2")]
    pub h_anticanonical: [u64; 3],
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDataset {
    pub name: String,
    pub table: TwistedTable,
    pub nested_table: Option<TwistedTable>,
    pub deformation: Option<DeformationInput>,
    pub betti: Option<[u64; 5]>,
    pub kahler_symmetric: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

impl SurfaceDataset {
    /// Plain Hodge diamond `h^{p,q}(S)`, i.e. the `k = 0` entry.
    pub fn hodge_diamond(&self) -> Option<&SurfaceDiamond> {
        self.table.diamond(0)
    }

    /// Table for `L^j (x) L'`; falls back to the main table (`L' = O`).
    pub fn nested_or_main(&self) -> &TwistedTable {
        self.nested_table.as_ref().unwrap_or(&self.table)
    }

    /// Constant table of the plain Hodge diamond (the `L = O` table).
    pub fn trivial_table(&self, max_power: u32) -> Option<TwistedTable> {
        self.hodge_diamond().map(|d| TwistedTable::constant(*d, max_power))
    }

    /// Stored Betti numbers, or the row sums of the Hodge diamond.
    pub fn betti_numbers(&self) -> Option<[u64; 5]> {
        self.betti.or_else(|| self.hodge_diamond().map(SurfaceDiamond::row_sums))
    }

    /// `omega_S` is trivial iff both `omega_S` and its dual have a section:
    /// `h^{2,0}(S) > 0` and `h^0(S, wedge^2 T_S) > 0`.
    pub fn canonical_bundle_trivial(&self) -> bool {
        match (self.hodge_diamond(), &self.deformation) {
            (Some(d), Some(def)) => d.get(2, 0) > 0 && def.h_anticanonical[0] > 0,
            _ => false,
        }
    }

    pub fn validate(&self) -> Result<ValidationReport, DataError> {
        let mut errors = Vec::new();
        let mut warnings = Vec::new();
        if self.table.is_empty() {
            errors.push("diamonds: the k=0 entry is missing".to_string());
        }
        if let Some(nested) = &self.nested_table {
            if nested.is_empty() {
                errors.push("nested_diamonds: the j=0 entry is missing".to_string());
            }
        }
        if let Some(def) = &self.deformation {
            if def.connected && def.h_structure[0] != 1 {
                errors.push(format!(
                    "deformation.hO[0] = {} but a connected surface has h^0(O) = 1",
                    def.h_structure[0]
                ));
            }
            if let Some(d) = self.hodge_diamond() {
                let row0 = [d.get(0, 0), d.get(0, 1), d.get(0, 2)];
                if row0 != def.h_structure {
                    warnings.push(format!(
                        "deformation.hO {:?} differs from the p=0 row {:?} of diamonds[0]",
                        def.h_structure, row0
                    ));
                }
            }
        }
        if let (Some(b), Some(d)) = (self.betti, self.hodge_diamond()) {
            if b.iter().sum::<u64>() == 0 && !d.is_zero() {
                warnings.push("betti numbers are all zero".to_string());
            }
        }
        if self.kahler_symmetric {
            let tables = std::iter::once(("diamonds", &self.table))
                .chain(self.nested_table.iter().map(|t| ("nested_diamonds", t)));
            for (label, table) in tables {
                for (k, d) in table.diamonds().iter().enumerate() {
                    if !d.is_symmetric() {
                        warnings.push(format!(
                            "{label}[{k}] is not symmetric although kahler_symmetric is set"
                        ));
                    }
                }
            }
        }
        if errors.is_empty() {
            Ok(ValidationReport { warnings })
        } else {
            Err(DataError::Validation(errors))
        }
    }

    pub fn to_json(&self) -> String {
        let raw = RawDataset::from(self);
        serde_json::to_string_pretty(&raw).expect("dataset serialization cannot fail")
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RawDataset {
    name: String,
    max_power: i64,
    diamonds: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nested_diamonds: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deformation: Option<RawDeformation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kahler_symmetric: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    betti: Option<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawDeformation {
    #[serde(rename = "hT")]
    h_tangent: Vec<i64>,
    #[serde(rename = "hO")]
    h_structure: Vec<i64>,
    #[serde(rename = "hW2")]
    h_anticanonical: Vec<i64>,
    connected: bool,
}

fn raw_diamonds(table: &TwistedTable) -> Vec<Vec<Vec<i64>>> {
    table
        .diamonds()
        .iter()
        .map(|d| d.h.iter().map(|row| row.iter().map(|&v| v as i64).collect()).collect())
        .collect()
}

impl From<&SurfaceDataset> for RawDataset {
    fn from(ds: &SurfaceDataset) -> Self {
        RawDataset {
            name: ds.name.clone(),
            max_power: ds.table.max_power().map_or(-1, i64::from),
            diamonds: raw_diamonds(&ds.table),
            nested_diamonds: ds.nested_table.as_ref().map(raw_diamonds),
            deformation: ds.deformation.map(|d| RawDeformation {
                h_tangent: d.h_tangent.iter().map(|&v| v as i64).collect(),
                h_structure: d.h_structure.iter().map(|&v| v as i64).collect(),
                h_anticanonical: d.h_anticanonical.iter().map(|&v| v as i64).collect(),
                connected: d.connected,
            }),
            kahler_symmetric: ds.kahler_symmetric.then_some(true),
            betti: ds.betti.map(|b| b.iter().map(|&v| v as i64).collect()),
        }
    }
}

fn nonneg(value: i64, what: &str, errors: &mut Vec<String>) -> u64 {
    if value < 0 {
        errors.push(format!("{what} = {value} is negative"));
        0
    } else {
        value as u64
    }
}

fn convert_table(
    raw: &[Vec<Vec<i64>>],
    label: &str,
    errors: &mut Vec<String>,
) -> Result<TwistedTable, DataError> {
    if raw.is_empty() {
        return Err(DataError::Schema(format!("{label} must contain at least the k=0 entry")));
    }
    let mut diamonds = Vec::with_capacity(raw.len());
    for (k, d) in raw.iter().enumerate() {
        if d.len() != 3 || d.iter().any(|row| row.len() != 3) {
            return Err(DataError::Schema(format!("{label}[{k}] must be a 3x3 matrix")));
        }
        let mut h = [[0u64; 3]; 3];
        for p in 0..3 {
            for q in 0..3 {
                h[p][q] = nonneg(d[p][q], &format!("{label}[{k}][{p}][{q}]"), errors);
            }
        }
        diamonds.push(SurfaceDiamond::new(h));
    }
    Ok(TwistedTable::new(diamonds))
}

fn triple(raw: &[i64], what: &str, errors: &mut Vec<String>) -> Result<[u64; 3], DataError> {
    if raw.len() != 3 {
        return Err(DataError::Schema(format!("{what} must have exactly 3 entries")));
    }
    Ok([
        nonneg(raw[0], &format!("{what}[0]"), errors),
        nonneg(raw[1], &format!("{what}[1]"), errors),
        nonneg(raw[2], &format!("{what}[2]"), errors),
    ])
}

/// Parse and validate a dataset from JSON text.
pub fn parse_dataset(text: &str) -> Result<SurfaceDataset, DataError> {
    let raw: RawDataset = serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => DataError::Schema(e.to_string()),
        _ => DataError::Parse(e.to_string()),
    })?;
    let mut errors = Vec::new();
    let table = convert_table(&raw.diamonds, "diamonds", &mut errors)?;
    if raw.max_power < 0 || raw.diamonds.len() as i64 != raw.max_power + 1 {
        return Err(DataError::Schema(format!(
            "max_power = {} but {} diamonds were given (expected max_power + 1)",
            raw.max_power,
            raw.diamonds.len()
        )));
    }
    let nested_table = match &raw.nested_diamonds {
        Some(n) => Some(convert_table(n, "nested_diamonds", &mut errors)?),
        None => None,
    };
    let deformation = match &raw.deformation {
        Some(d) => Some(DeformationInput {
            h_tangent: triple(&d.h_tangent, "deformation.hT", &mut errors)?,
            h_structure: triple(&d.h_structure, "deformation.hO", &mut errors)?,
            h_anticanonical: triple(&d.h_anticanonical, "deformation.hW2", &mut errors)?,
            connected: d.connected,
        }),
        None => None,
    };
    let betti = match &raw.betti {
        Some(b) => {
            if b.len() != 5 {
                return Err(DataError::Schema("betti must have exactly 5 entries".into()));
            }
            let mut out = [0u64; 5];
            for (i, &v) in b.iter().enumerate() {
                out[i] = nonneg(v, &format!("betti[{i}]"), &mut errors);
            }
            Some(out)
        }
        None => None,
    };
    if !errors.is_empty() {
        return Err(DataError::Validation(errors));
    }
    let ds = SurfaceDataset {
        name: raw.name,
        table,
        nested_table,
        deformation,
        betti,
        kahler_symmetric: raw.kahler_symmetric.unwrap_or(false),
    };
    ds.validate()?;
    Ok(ds)
}

pub fn load_dataset(path: &Path) -> Result<SurfaceDataset, DataError> {
    let text = std::fs::read_to_string(path).map_err(|e| DataError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_dataset(&text)
}

const HOPF: SurfaceDiamond = SurfaceDiamond::new([[1, 1, 0], [0, 0, 0], [0, 1, 1]]);

fn diamond_from_rows(h00: u64, h01: u64, h02: u64, h11: u64) -> SurfaceDiamond {
    // Kähler-symmetric diamond with Serre duality h^{p,q} = h^{2-p,2-q}
    SurfaceDiamond::new([[h00, h01, h02], [h01, h11, h01], [h02, h01, h00]])
}

/// Built-in surfaces with `L = O`. Every `k` carries the plain Hodge diamond.
pub fn preset(name: &str) -> Result<SurfaceDataset, DataError> {
    let def = |h_tangent, h_structure, h_anticanonical| {
        Some(DeformationInput {
            h_tangent,
            h_structure,
            h_anticanonical,
            connected: true,
        })
    };
    let (diamond, deformation, kahler) = match name {
        // Hodge polynomial 1 + y + x^2 y + x^2 y^2
        "hopf" | "inoue" => (HOPF, None, false),
        "kodaira_secondary" => (HOPF.transpose(), None, false),
        "k3" => (diamond_from_rows(1, 0, 1, 20), def([0, 20, 0], [1, 0, 1], [1, 0, 1]), true),
        "torus" => (diamond_from_rows(1, 2, 1, 4), def([2, 4, 2], [1, 2, 1], [1, 2, 1]), true),
        "enriques" => (diamond_from_rows(1, 0, 0, 10), def([0, 10, 0], [1, 0, 0], [0, 0, 1]), true),
        "bielliptic_ord2" => (diamond_from_rows(1, 1, 0, 2), def([1, 2, 1], [1, 1, 0], [0, 1, 1]), true),
        "bielliptic_ord3" => (diamond_from_rows(1, 1, 0, 2), def([1, 1, 0], [1, 1, 0], [0, 0, 0]), true),
        "p2" => (diamond_from_rows(1, 0, 0, 1), def([8, 0, 0], [1, 0, 0], [10, 0, 0]), true),
        other => return Err(DataError::UnknownPreset(other.to_string())),
    };
    Ok(SurfaceDataset {
        name: name.to_string(),
        table: TwistedTable::constant(diamond, PRESET_MAX_POWER),
        nested_table: None,
        deformation,
        betti: Some(diamond.row_sums()),
        kahler_symmetric: kahler,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf_json() -> &'static str {
        r#"{"name":"hopf","max_power":1,
            "diamonds":[[[1,1,0],[0,0,0],[0,1,1]],[[1,1,0],[0,0,0],[0,1,1]]]}"#
    }

    #[test]
    fn load_hopf_text() {
        let ds = parse_dataset(hopf_json()).unwrap();
        let d = ds.table.diamond(1).unwrap();
        assert_eq!((d.get(0, 0), d.get(0, 1), d.get(2, 1), d.get(2, 2)), (1, 1, 1, 1));
        assert_eq!(d.h.iter().flatten().sum::<u64>(), 4);
        assert_eq!(ds.table.max_power(), Some(1));
    }

    #[test]
    fn load_rejects_empty_table() {
        let err = parse_dataset(r#"{"name":"x","max_power":0,"diamonds":[]}"#).unwrap_err();
        assert!(matches!(err, DataError::Schema(_)), "{err:?}");
    }

    #[test]
    fn load_rejects_negative_entry() {
        let err = parse_dataset(
            r#"{"name":"x","max_power":0,"diamonds":[[[1,0,0],[0,-1,0],[0,0,1]]]}"#,
        )
        .unwrap_err();
        match err {
            DataError::Validation(msgs) => assert!(msgs[0].contains("diamonds[0][1][1]")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn load_error_categories() {
        assert!(matches!(parse_dataset("{not json"), Err(DataError::Parse(_))));
        assert!(matches!(parse_dataset(r#"{"name":"x"}"#), Err(DataError::Schema(_))));
        assert!(matches!(
            parse_dataset(r#"{"name":"x","max_power":3,"diamonds":[[[1,0,0],[0,1,0],[0,0,1]]]}"#),
            Err(DataError::Schema(_))
        ));
        assert!(matches!(
            parse_dataset(r#"{"name":"x","max_power":0,"diamonds":[[[1,0],[0,1,0],[0,0,1]]]}"#),
            Err(DataError::Schema(_))
        ));
    }

    #[test]
    fn preset_hopf_and_kodaira() {
        let hopf = preset("hopf").unwrap();
        for d in hopf.table.diamonds() {
            assert_eq!(*d, HOPF);
        }
        let kod = preset("kodaira_secondary").unwrap();
        assert_eq!(*kod.table.diamond(3).unwrap(), HOPF.transpose());
        assert_eq!(preset("inoue").unwrap().table, hopf.table);
        assert_eq!(hopf.betti, Some([1, 1, 0, 1, 1]));
    }

    #[test]
    fn preset_torus_deformation() {
        let torus = preset("torus").unwrap();
        let d = torus.deformation.unwrap();
        assert_eq!(d.h_tangent, [2, 4, 2]);
        assert_eq!(d.h_structure, [1, 2, 1]);
        assert_eq!(d.h_anticanonical, [1, 2, 1]);
        assert!(torus.canonical_bundle_trivial());
        assert!(preset("k3").unwrap().canonical_bundle_trivial());
        assert!(!preset("enriques").unwrap().canonical_bundle_trivial());
        assert!(!preset("bielliptic_ord2").unwrap().canonical_bundle_trivial());
    }

    #[test]
    fn unknown_preset() {
        assert_eq!(preset("fermat"), Err(DataError::UnknownPreset("fermat".into())));
    }

    #[test]
    fn presets_validate_and_round_trip() {
        for name in PRESET_NAMES {
            let ds = preset(name).unwrap();
            let report = ds.validate().unwrap();
            assert!(report.is_clean(), "{name}: {:?}", report.warnings);
            let back = parse_dataset(&ds.to_json()).unwrap();
            assert_eq!(back, ds, "{name}");
        }
    }

    #[test]
    fn validate_warns_on_asymmetry() {
        let mut ds = preset("hopf").unwrap();
        assert!(ds.validate().unwrap().is_clean());
        ds.kahler_symmetric = true;
        let report = ds.validate().unwrap();
        assert_eq!(report.warnings.len(), PRESET_MAX_POWER as usize + 1);
    }

    #[test]
    fn validate_rejects_missing_k0() {
        let mut ds = preset("hopf").unwrap();
        ds.table = TwistedTable::new(Vec::new());
        assert!(matches!(ds.validate(), Err(DataError::Validation(_))));
    }

    #[test]
    fn diamond_helpers() {
        assert_eq!(HOPF.row_sums(), [1, 1, 0, 1, 1]);
        assert_eq!(HOPF.holomorphic_euler_characteristic(0), 0);
        assert_eq!(HOPF.holomorphic_euler_characteristic(2), 0);
        let k3 = preset("k3").unwrap();
        assert_eq!(k3.hodge_diamond().unwrap().holomorphic_euler_characteristic(1), -20);
    }
}
