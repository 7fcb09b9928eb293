//! JSON configuration files describing a grading setup.
//!
//! ```json
//! {
//!   "group": {"rank": 2, "torsion": []},
//!   "degrees": [{"free": [1, 0]}, {"free": [-2, 1]}, {"free": [1, 0]}, {"free": [0, 1]}],
//!   "chamber_point": [1, "1/2"],
//!   "C": [{"free": [1, 0]}, {"free": [0, 1]}],
//!   "flags": {"pointed_required": true, "field": "Q"}
//! }
//! ```
//!
//! Instead of `group` and `degrees` a ray matrix `rays` (one row per coordinate of the fan's
//! lattice) may be given; instead of, or besides, `chamber_point` a `triangulation` lists facets
//! by 1-based variable indices.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cohomology::Field;
use crate::error::{Error, Result};
use crate::fan::{group_from_rays, ChamberSpec, GradingSetup};
use crate::group::{AbelianGroup, GroupElement};
use crate::linalg::{IntMatrix, Matrix};
use crate::regularity::parse_rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFlags {
    #[serde(default = "yes")]
    pub pointed_required: bool,
    #[serde(default = "rationals")]
    pub field: String,
}

fn yes() -> bool {
    true
}

fn rationals() -> String {
    "Q".into()
}

impl Default for ConfigFlags {
    fn default() -> Self {
        ConfigFlags { pointed_required: true, field: rationals() }
    }
}

/// A rational given as a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalValue {
    Int(i64),
    Text(String),
}

impl RationalValue {
    pub fn value(&self) -> Result<BigRational> {
        match self {
            RationalValue::Int(x) => Ok(BigRational::from_integer(BigInt::from(*x))),
            RationalValue::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<GroupElement>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber_point: Option<Vec<RationalValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangulation: Option<Vec<Vec<usize>>>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<GroupElement>>,
    #[serde(default)]
    pub flags: ConfigFlags,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("configuration: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn field(&self) -> Result<Field> {
        self.flags.field.parse()
    }

    /// The grading group and the variable degrees.
    pub fn grading(&self) -> Result<(AbelianGroup, Vec<GroupElement>)> {
        match (&self.degrees, &self.rays) {
            (Some(_), Some(_)) => Err(Error::Invalid("give either degrees or rays, not both".into())),
            (None, None) => Err(Error::Invalid("one of degrees or rays is required".into())),
            (Some(degrees), None) => {
                let spec = self.group.as_ref().ok_or_else(|| Error::Invalid("degrees need a group".into()))?;
                let group = AbelianGroup::new(spec.rank, spec.torsion.iter().map(|&m| BigInt::from(m)).collect())?;
                for a in degrees {
                    group.check(a)?;
                }
                Ok((group, degrees.clone()))
            }
            (None, Some(rays)) => {
                let cols = rays.first().map_or(0, Vec::len);
                if rays.iter().any(|r| r.len() != cols) || cols == 0 {
                    return Err(Error::Invalid("rays must be a nonempty rectangular matrix".into()));
                }
                let m: IntMatrix = Matrix::from_fn(rays.len(), cols, |i, j| BigInt::from(rays[i][j]));
                let (group, degrees) = group_from_rays(&m)?;
                if let Some(spec) = &self.group {
                    let expect: Vec<BigInt> = spec.torsion.iter().map(|&x| BigInt::from(x)).collect();
                    if spec.rank != group.rank() || expect != group.torsion_moduli() {
                        return Err(Error::Invalid(format!("the rays determine the group {group}, not the one given")));
                    }
                }
                Ok((group, degrees))
            }
        }
    }

    pub fn chamber(&self, n: usize) -> Result<ChamberSpec> {
        let point = match &self.chamber_point {
            Some(p) => Some(p.iter().map(RationalValue::value).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let facets = match &self.triangulation {
            Some(t) => Some(
                t.iter()
                    .map(|f| {
                        f.iter()
                            .map(|&v| {
                                if v == 0 || v > n {
                                    Err(Error::BadTriangulation(format!("vertex {v} is not in 1..={n}")))
                                } else {
                                    Ok(v - 1)
                                }
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        if point.is_none() && facets.is_none() {
            return Err(Error::Invalid("one of chamber_point or triangulation is required".into()));
        }
        Ok(ChamberSpec { point, facets })
    }

    pub fn build(&self) -> Result<GradingSetup> {
        let (group, degrees) = self.grading()?;
        let chamber = self.chamber(degrees.len())?;
        if let Some(c) = &self.c {
            if c.is_empty() {
                return Err(Error::Invalid("C must not be empty".into()));
            }
        }
        let setup = GradingSetup::new(group, degrees, chamber, self.c.clone())?.with_field(self.field()?);
        if self.flags.pointed_required && !setup.flags().pointed {
            return Err(Error::HypothesisViolated("the free degrees must span a pointed cone".into()));
        }
        Ok(setup)
    }
}

/// Reads a configuration from JSON text and builds its setup.
pub fn load_setup(text: &str) -> Result<GradingSetup> {
    ConfigFile::from_json(text)?.build()
}
