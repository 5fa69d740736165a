//! Validated surface descriptions: lattice, the (-2)-curve C, the nef class
//! nu, effective-cone generators, the D-class construction, bundled example
//! builders, and the `.k3.json` file format.

use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::rat::{fmt_rat, parse_rat, rat, ratio, Rat};

/// A validated stage for all computations: the lattice, the distinguished
/// (-2)-curve C, the nef class nu with nu.C = 0, and the effective-cone
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub lattice: IntersectionLattice,
    pub curve_c: DivisorClass,
    pub nu: DivisorClass,
    pub effective_generators: Vec<DivisorClass>,
    pub e: i64,
    pub d_class: Option<DivisorClass>,
}

/// A single invariant violation, reported as data rather than an error so a
/// validation pass can list all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

/// Checks every invariant exactly and returns all violations.
pub fn validate_surface(model: &SurfaceModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let l = &model.lattice;
    let mut push = |field: &'static str, message: String| {
        out.push(Violation { field, message });
    };

    if model.e != 2 {
        push("e", format!("e = {} but the model requires e = 2", model.e));
    }
    match l.norm(&model.curve_c) {
        Ok(csq) => {
            if csq != rat(-model.e) {
                push(
                    "curve_C",
                    format!("curve_c^2 = {}, expected {}", fmt_rat(&csq), -model.e),
                );
            }
        }
        Err(e) => push("curve_C", e.to_string()),
    }
    match l.pair(&model.nu, &model.curve_c) {
        Ok(p) => {
            if !p.is_zero() {
                push("nu", format!("nu.C = {}, expected 0", fmt_rat(&p)));
            }
        }
        Err(e) => push("nu", e.to_string()),
    }
    match l.norm(&model.nu) {
        Ok(p) => {
            if !p.is_positive() {
                push("nu", format!("nu^2 = {}, expected > 0", fmt_rat(&p)));
            }
        }
        Err(e) => push("nu", e.to_string()),
    }
    for (i, g) in model.effective_generators.iter().enumerate() {
        if g.is_proportional_to(&model.curve_c) {
            continue;
        }
        match l.pair(&model.nu, g) {
            Ok(p) => {
                if !p.is_positive() {
                    push(
                        "effective_generators",
                        format!("nu.g[{i}] = {}, expected > 0", fmt_rat(&p)),
                    );
                }
            }
            Err(e) => push("effective_generators", e.to_string()),
        }
    }
    if let Some(d) = &model.d_class {
        match l.pair(d, &model.curve_c) {
            Ok(p) => {
                if p != rat(1) {
                    push("D", format!("D.C = {}, expected 1", fmt_rat(&p)));
                }
            }
            Err(e) => push("D", e.to_string()),
        }
        match l.norm(d) {
            Ok(p) => {
                if !p.is_zero() {
                    push("D", format!("D^2 = {}, expected 0", fmt_rat(&p)));
                }
            }
            Err(e) => push("D", e.to_string()),
        }
    }
    out
}

/// The Picard-rank-2 family: Gram [[-2, q], [q, -2]], C = C1,
/// nu = (q/2) y C1 + y C2, generators {C1, C2}. Requires q > 2 and y a
/// positive even integer.
pub fn build_example_rank2(q: i64, y: i64) -> Result<SurfaceModel, Error> {
    if q <= 2 {
        return Err(Error::NotAK3Configuration { q });
    }
    if y <= 0 || y % 2 != 0 {
        return Err(Error::OutOfDomain {
            what: format!("y must be a positive even integer, got {y}"),
        });
    }
    let lattice = IntersectionLattice::new(
        vec!["C1".into(), "C2".into()],
        vec![vec![-2, q], vec![q, -2]],
    )?;
    let curve_c = lattice.basis_class(0);
    let nu = DivisorClass::new(vec![ratio(q, 2) * rat(y), rat(y)]);
    let model = SurfaceModel {
        name: format!("rank2-q{q}-y{y}"),
        effective_generators: vec![lattice.basis_class(0), lattice.basis_class(1)],
        lattice,
        curve_c,
        nu,
        e: 2,
        d_class: None,
    };
    debug_assert!(validate_surface(&model).is_empty());
    Ok(model)
}

/// D = (nu - C)/e; requires nu^2 = 2 and yields D.C = 1, D^2 = 0.
pub fn build_d_class(model: &SurfaceModel) -> Result<DivisorClass, Error> {
    let nu_sq = model.lattice.norm(&model.nu)?;
    if nu_sq != rat(2) {
        return Err(Error::DClassUnavailable {
            nu_sq: fmt_rat(&nu_sq),
        });
    }
    let d = model
        .nu
        .sub(&model.curve_c)?
        .scale(&ratio(1, model.e));
    Ok(d)
}

// --- File format ------------------------------------------------------

/// Exact rational in a surface file: a bare JSON integer or a "p/q" string.
#[derive(Debug, Clone)]
struct FileRat(Rat);

impl Serialize for FileRat {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&fmt_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for FileRat {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Int(n) => Ok(FileRat(rat(n))),
            Raw::Str(s) => parse_rat(&s).map(FileRat).map_err(D::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum CurveRef {
    Label(String),
    Coords(Vec<FileRat>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    name: String,
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
    #[serde(rename = "curve_C")]
    curve_c: CurveRef,
    nu: Vec<FileRat>,
    effective_generators: Vec<Vec<FileRat>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<FileRat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e: Option<i64>,
}

fn class_from(coords: Vec<FileRat>) -> DivisorClass {
    DivisorClass::new(coords.into_iter().map(|r| r.0).collect())
}

fn class_to(class: &DivisorClass) -> Vec<FileRat> {
    class.coords.iter().cloned().map(FileRat).collect()
}

/// Parses a surface file. Parse-stage failures (malformed JSON, unknown
/// fields, non-symmetric Gram) are `Error::Parse`; invariant violations are
/// reported unless `allow_invalid`.
pub fn load_surface(text: &str, allow_invalid: bool) -> Result<SurfaceModel, Error> {
    let file: SurfaceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        what: format!("surface file: {e}"),
    })?;
    let lattice = IntersectionLattice::new(file.basis, file.gram)?;
    let curve_c = match file.curve_c {
        CurveRef::Label(label) => {
            let idx = lattice.basis_index(&label).ok_or_else(|| Error::Parse {
                what: format!("curve_C label `{label}` is not a basis name"),
            })?;
            lattice.basis_class(idx)
        }
        CurveRef::Coords(coords) => class_from(coords),
    };
    let model = SurfaceModel {
        name: file.name,
        curve_c,
        nu: class_from(file.nu),
        effective_generators: file.effective_generators.into_iter().map(class_from).collect(),
        e: file.e.unwrap_or(2),
        d_class: file.d.map(class_from),
        lattice,
    };
    if !allow_invalid {
        let violations = validate_surface(&model);
        if !violations.is_empty() {
            let listing = violations
                .iter()
                .map(|v| format!("{}: {}", v.field, v.message))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::OutOfDomain {
                what: format!("surface fails validation: {listing}"),
            });
        }
    }
    Ok(model)
}

/// Serializes a model back to the file format (bit-exact rationals).
pub fn save_surface(model: &SurfaceModel) -> String {
    let file = SurfaceFile {
        name: model.name.clone(),
        basis: model.lattice.basis_names().to_vec(),
        gram: model
            .lattice
            .gram()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| i64::try_from(x).expect("gram entries fit in i64"))
                    .collect()
            })
            .collect(),
        curve_c: CurveRef::Coords(class_to(&model.curve_c)),
        nu: class_to(&model.nu),
        effective_generators: model.effective_generators.iter().map(class_to).collect(),
        d: model.d_class.as_ref().map(class_to),
        e: Some(model.e),
    };
    serde_json::to_string_pretty(&file).expect("surface file serializes")
}
