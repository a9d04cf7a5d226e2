//! JSON documents for groups, modules, subgroup families and instances.
//!
//! Group:
//! `{"kind":"named","name":"S3"}`,
//! `{"kind":"table","order":n,"table":[[...],...]}` or
//! `{"kind":"product","factors":[...]}`.
//!
//! Module:
//! `{"kind":"mu","m":m,"character":[u_0,...]}` or
//! `{"orders":[...],"action":{"g":[[...],...],...}}`. An explicit action may
//! list only generators; the rest is closed up under products. Without
//! `action` the group acts trivially.
//!
//! Instance: the fields of [`Instance`], with `group` and `character`
//! optional and `flags` an object of booleans. An omitted `dl_commutative`
//! defaults to `dl_cm_field`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use twistcert_core::albert::AlbertProfile;
use twistcert_core::groups::{cyclic_subgroups, subgroups};
use twistcert_core::lgp::{Flags, LgpError};
use twistcert_core::{CyclotomicCharacter, FiniteGroup, GModule, GroupSpec, Instance, Subgroup};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Inconsistent(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        FormatError::Syntax { line: e.line(), column: e.column(), message }
    }
}

fn field(name: &str, message: impl std::fmt::Display) -> FormatError {
    FormatError::Field { field: name.to_string(), message: message.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDoc {
    Named {
        name: String,
    },
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Product {
        factors: Vec<GroupDoc>,
    },
}

impl GroupDoc {
    fn to_spec(&self, path: &str) -> Result<GroupSpec, FormatError> {
        Ok(match self {
            GroupDoc::Named { name } => GroupSpec::Named(name.clone()),
            GroupDoc::Table { order, table, name } => {
                if table.len() != *order {
                    return Err(field(path, format!("table has {} rows, order is {order}", table.len())));
                }
                GroupSpec::Table { table: table.clone(), name: name.clone() }
            }
            GroupDoc::Product { factors } => GroupSpec::Product(
                factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.to_spec(&format!("{path}.factors[{i}]")))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }

    pub fn build(&self, path: &str) -> Result<Arc<FiniteGroup>, FormatError> {
        let spec = self.to_spec(path)?;
        FiniteGroup::build(&spec).map(Arc::new).map_err(|e| field(path, e))
    }

    /// The shortest document that rebuilds `g` exactly, name included.
    pub fn of(g: &FiniteGroup) -> GroupDoc {
        if let Some(name) = g.name() {
            if FiniteGroup::named(name).is_ok_and(|h| h == *g) {
                return GroupDoc::Named { name: name.to_string() };
            }
        }
        GroupDoc::Table { order: g.order(), table: g.table(), name: g.name().map(str::to_string) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BTreeMap<String, Vec<Vec<i64>>>>,
}

impl ModuleDoc {
    pub fn build(&self, group: &Arc<FiniteGroup>, path: &str) -> Result<GModule, FormatError> {
        match self.kind.as_deref() {
            Some("mu") => {
                if self.orders.is_some() || self.action.is_some() {
                    return Err(field(path, "a mu module takes `m` and `character`, not `orders`/`action`"));
                }
                let m = self.m.ok_or_else(|| field(&format!("{path}.m"), "missing"))?;
                if m == 0 {
                    return Err(field(&format!("{path}.m"), "must be at least 1"));
                }
                let chi = match &self.character {
                    Some(values) => CyclotomicCharacter::new(group.clone(), m, values.clone())
                        .map_err(|e| field(&format!("{path}.character"), e))?,
                    None => CyclotomicCharacter::trivial(group.clone(), m),
                };
                GModule::mu_module(group.clone(), m, &chi).map_err(|e| field(path, e))
            }
            Some(other) => Err(field(&format!("{path}.kind"), format!("unknown module kind `{other}`"))),
            None => {
                if self.m.is_some() || self.character.is_some() {
                    return Err(field(path, "`m` and `character` need \"kind\": \"mu\""));
                }
                let orders = self.orders.as_ref().ok_or_else(|| field(&format!("{path}.orders"), "missing"))?;
                let mut given = BTreeMap::new();
                for (key, matrix) in self.action.iter().flatten() {
                    let g: usize = key
                        .parse()
                        .map_err(|_| field(&format!("{path}.action"), format!("`{key}` is not an element index")))?;
                    given.insert(g, matrix.clone());
                }
                if given.is_empty() {
                    return GModule::trivial_action(group.clone(), orders).map_err(|e| field(path, e));
                }
                GModule::from_partial_action(group.clone(), orders, &given).map_err(|e| field(path, e))
            }
        }
    }

    /// A full explicit description of `module`.
    pub fn of(module: &GModule) -> ModuleDoc {
        let r = module.rank();
        let action = (0..module.group().order())
            .map(|g| {
                let a = module.action(g);
                let rows = (0..r).map(|i| (0..r).map(|j| a.get(i, j) as i64).collect()).collect();
                (g.to_string(), rows)
            })
            .collect();
        ModuleDoc { orders: Some(module.orders().to_vec()), action: Some(action), ..ModuleDoc::default() }
    }
}

/// A family of subgroups: `"cyclic"`, `"all"`, `"trivial"`, `"whole"` or a
/// list of element lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyDoc {
    Keyword(String),
    Explicit(Vec<Vec<usize>>),
}

impl FamilyDoc {
    pub fn build(&self, group: &Arc<FiniteGroup>, path: &str) -> Result<Vec<Subgroup>, FormatError> {
        match self {
            FamilyDoc::Keyword(k) => match k.as_str() {
                "cyclic" => Ok(cyclic_subgroups(group)),
                "all" => Ok(subgroups(group)),
                "trivial" => Ok(vec![Subgroup::trivial(group.clone())]),
                "whole" => Ok(vec![Subgroup::whole(group.clone())]),
                other => Err(field(path, format!("unknown family `{other}`"))),
            },
            FamilyDoc::Explicit(list) => list
                .iter()
                .enumerate()
                .map(|(i, els)| Subgroup::new(group.clone(), els).map_err(|e| field(&format!("{path}[{i}]"), e)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsDoc {
    #[serde(default)]
    pub dl_equals_d: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dl_commutative: Option<bool>,
    #[serde(default)]
    pub dl_cm_field: bool,
    #[serde(default)]
    pub mu_m_in_d: bool,
    #[serde(default)]
    pub geometrically_simple: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlbertDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e0: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    /// Values of the action on `μ_m`, indexed by group element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<u64>>,
    #[serde(default)]
    pub flags: FlagsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub albert: Option<AlbertDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub declared_decomposition_subgroups: Vec<Vec<usize>>,
}

impl InstanceDoc {
    pub fn build(&self) -> Result<Instance, FormatError> {
        if self.m == 0 {
            return Err(field("m", "must be at least 1"));
        }
        if self.g == Some(0) {
            return Err(field("g", "must be at least 1"));
        }
        let group = self.group.as_ref().map(|d| d.build("group")).transpose()?;
        let character = match (&self.character, &group) {
            (None, _) => None,
            (Some(_), None) => return Err(field("character", "given without a group")),
            (Some(values), Some(g)) => Some(
                CyclotomicCharacter::new(g.clone(), self.m, values.clone()).map_err(|e| field("character", e))?,
            ),
        };
        let declared = match &group {
            None if !self.declared_decomposition_subgroups.is_empty() => {
                return Err(field("declared_decomposition_subgroups", "given without a group"))
            }
            None => Vec::new(),
            Some(g) => FamilyDoc::Explicit(self.declared_decomposition_subgroups.clone())
                .build(g, "declared_decomposition_subgroups")?,
        };
        let f = &self.flags;
        let flags = Flags {
            dl_equals_d: f.dl_equals_d,
            dl_commutative: f.dl_commutative.unwrap_or(f.dl_cm_field),
            dl_cm_field: f.dl_cm_field,
            mu_m_in_d: f.mu_m_in_d,
            geometrically_simple: f.geometrically_simple,
        };
        let albert = match &self.albert {
            None => None,
            Some(a) => {
                let g = self.g.ok_or_else(|| field("albert", "needs the dimension `g`"))?;
                Some(AlbertProfile {
                    g,
                    m: self.m,
                    center_degree: a.center_degree,
                    d: a.d,
                    delta: a.delta,
                    e0: a.e0,
                })
            }
        };
        let instance = Instance {
            m: self.m,
            g: self.g,
            group,
            character,
            flags,
            albert,
            declared_decomposition_subgroups: declared,
        };
        instance.validate().map_err(|e| match e {
            LgpError::Inconsistent(why) => FormatError::Inconsistent(why),
            other => FormatError::Inconsistent(other.to_string()),
        })
    }

    pub fn of(instance: &Instance) -> InstanceDoc {
        let f = instance.flags;
        InstanceDoc {
            m: instance.m,
            g: instance.g,
            group: instance.group.as_deref().map(GroupDoc::of),
            character: instance.character.as_ref().map(|c| c.values().to_vec()),
            flags: FlagsDoc {
                dl_equals_d: f.dl_equals_d,
                dl_commutative: Some(f.dl_commutative),
                dl_cm_field: f.dl_cm_field,
                mu_m_in_d: f.mu_m_in_d,
                geometrically_simple: f.geometrically_simple,
            },
            albert: instance.albert.as_ref().map(|a| AlbertDoc {
                center_degree: a.center_degree,
                d: a.d,
                delta: a.delta,
                e0: a.e0,
            }),
            declared_decomposition_subgroups: instance
                .declared_decomposition_subgroups
                .iter()
                .map(|h| h.elements().to_vec())
                .collect(),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    serde_json::from_str::<InstanceDoc>(text)?.build()
}

pub fn write_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceDoc::of(instance)).expect("documents serialize")
}

/// Reads a group from JSON text, or from a bare name such as `S3`.
pub fn parse_group(text: &str) -> Result<Arc<FiniteGroup>, FormatError> {
    let text = text.trim();
    if text.starts_with('{') {
        serde_json::from_str::<GroupDoc>(text)?.build("group")
    } else {
        GroupDoc::Named { name: text.to_string() }.build("group")
    }
}

pub fn parse_module(group: &Arc<FiniteGroup>, text: &str) -> Result<GModule, FormatError> {
    serde_json::from_str::<ModuleDoc>(text)?.build(group, "module")
}

/// Reads a family from JSON text or a bare keyword.
pub fn parse_family(group: &Arc<FiniteGroup>, text: &str) -> Result<Vec<Subgroup>, FormatError> {
    let text = text.trim();
    let doc = if text.starts_with('[') || text.starts_with('"') {
        serde_json::from_str::<FamilyDoc>(text)?
    } else {
        FamilyDoc::Keyword(text.to_string())
    };
    doc.build(group, "family")
}
