//! Scenario files: chart, object and check declarations in JSON. Every
//! mathematical payload is a string in the scalar/form grammar.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub sampling: Sampling,
    #[serde(default)]
    pub charts: Vec<ChartDecl>,
    #[serde(default)]
    pub objects: Vec<ObjectDecl>,
    #[serde(default)]
    pub checks: Vec<CheckDecl>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_count")]
    pub count: usize,
    /// Numerators of sampled rationals lie in `[-box, box]`.
    #[serde(rename = "box", default = "default_box")]
    pub bound: i64,
}

fn default_count() -> usize {
    10
}

fn default_box() -> i64 {
    10
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { seed: 0, count: default_count(), bound: default_box() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDecl {
    pub name: String,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionDecl {
    pub vector: String,
    pub form: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectDecl {
    Scalar {
        name: String,
        chart: String,
        value: String,
    },
    Form {
        name: String,
        chart: String,
        value: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    Multivector {
        name: String,
        chart: String,
        value: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    Map {
        name: String,
        source: String,
        target: String,
        components: Vec<String>,
    },
    Frame {
        name: String,
        chart: String,
        k: usize,
        sections: Vec<SectionDecl>,
    },
    /// Structure maps are names of `map` objects; `unit_complement` rows are
    /// scalars on the base and `right_ext` entries vector fields on arrows.
    Groupoid {
        name: String,
        arrows: String,
        base: String,
        s: String,
        t: String,
        eps: String,
        inv: String,
        pr1: String,
        pr2: String,
        mult: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inverse_pair: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit_complement: Option<Vec<Vec<String>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        right_ext: Option<Vec<String>>,
    },
    /// `structure[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
    LieAlgebra {
        name: String,
        structure: Vec<Vec<Vec<String>>>,
        pairing: Vec<Vec<String>>,
    },
    /// `anchor` has one row per coordinate and one column per frame element.
    Algebroid {
        name: String,
        chart: String,
        anchor: Vec<Vec<String>>,
        structure: Vec<Vec<Vec<String>>>,
    },
    ImForm {
        name: String,
        algebroid: String,
        k: usize,
        forms: Vec<String>,
    },
    /// Expands to the catalog entry's objects, named `<name>.<object>`.
    Catalog {
        name: String,
        catalog: String,
        #[serde(default)]
        params: BTreeMap<String, String>,
    },
}

impl ObjectDecl {
    pub fn name(&self) -> &str {
        match self {
            ObjectDecl::Scalar { name, .. }
            | ObjectDecl::Form { name, .. }
            | ObjectDecl::Multivector { name, .. }
            | ObjectDecl::Map { name, .. }
            | ObjectDecl::Frame { name, .. }
            | ObjectDecl::Groupoid { name, .. }
            | ObjectDecl::LieAlgebra { name, .. }
            | ObjectDecl::Algebroid { name, .. }
            | ObjectDecl::ImForm { name, .. }
            | ObjectDecl::Catalog { name, .. } => name,
        }
    }

    /// Copy with its own name and every object reference prefixed.
    pub fn prefixed(&self, prefix: &str) -> ObjectDecl {
        let p = |s: &String| format!("{prefix}{s}");
        let mut out = self.clone();
        match &mut out {
            ObjectDecl::Groupoid { name, s, t, eps, inv, pr1, pr2, mult, inverse_pair, .. } => {
                for field in [name, s, t, eps, inv, pr1, pr2, mult] {
                    *field = p(field);
                }
                if let Some(ip) = inverse_pair {
                    *ip = p(ip);
                }
            }
            ObjectDecl::ImForm { name, algebroid, .. } => {
                *name = p(name);
                *algebroid = p(algebroid);
            }
            ObjectDecl::Scalar { name, .. }
            | ObjectDecl::Form { name, .. }
            | ObjectDecl::Multivector { name, .. }
            | ObjectDecl::Map { name, .. }
            | ObjectDecl::Frame { name, .. }
            | ObjectDecl::LieAlgebra { name, .. }
            | ObjectDecl::Algebroid { name, .. }
            | ObjectDecl::Catalog { name, .. } => *name = p(name),
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDecl {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub op: String,
    #[serde(default)]
    pub args: Vec<String>,
    /// `generic` (default), `sampled` or `both`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

impl CheckDecl {
    pub fn new(op: &str, args: &[&str], mode: Option<&str>) -> Self {
        CheckDecl {
            name: None,
            op: op.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
            mode: mode.map(str::to_string),
        }
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("{}({})", self.op, self.args.join(", ")))
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}
