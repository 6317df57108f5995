//! Input files: a versioned JSON envelope around one verifiable payload.
//!
//! Parsing distinguishes malformed JSON from schema violations so the two
//! get different exit codes; schema diagnostics name the offending path.

use std::fmt;
use std::path::Path;

use gradcat_core::cat::{builtin_monoids, CatError, CatMorphism, CatObject};
use gradcat_core::chains::BuiltinChain;
use gradcat_core::finset::{FinMap, FinSet};
use gradcat_core::functor::FunctorPresentation;
use gradcat_core::label::Label;
use gradcat_core::report::SuiteConfig;
use gradcat_core::suites::SuiteName;
use serde::Deserialize;

pub const SUPPORTED_VERSION: u64 = 1;

/// A spec-loading failure, split by exit code: unreadable or malformed
/// input versus a well-formed document that violates the schema.
#[derive(Debug)]
pub enum SpecError {
    Parse(String),
    Schema(String),
}

impl SpecError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SpecError::Parse(_) => 2,
            SpecError::Schema(_) => 3,
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse(msg) => write!(f, "parse error: {msg}"),
            SpecError::Schema(msg) => write!(f, "schema violation: {msg}"),
        }
    }
}

fn schema(path: &str, msg: impl fmt::Display) -> SpecError {
    SpecError::Schema(format!("{path}: {msg}"))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub version: u64,
    pub payload: Payload,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    /// An inline functor presentation in the engine's JSON form.
    Functor(FunctorPresentation),
    /// A reference to a named built-in functor, e.g. `c01` or `hom:2`.
    Builtin(BuiltinSpec),
    /// An object of one of the graded instances.
    Object(ObjectSpec),
    /// One of the built-in codirected chains, truncated at a depth.
    Chain(ChainSpec),
    /// An intersection square of two subsets of a plain finite set.
    Square(SquareSpec),
    /// A named verification suite with its configuration.
    Suite(SuiteSpec),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinSpec {
    pub name: String,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "cat", rename_all = "kebab-case")]
pub enum ObjectSpec {
    Set {
        carrier: Vec<String>,
    },
    Setp {
        carrier: Vec<String>,
        base: String,
    },
    Pos {
        carrier: Vec<String>,
        le: Vec<(String, String)>,
    },
    Bool {
        atoms: Vec<String>,
    },
    Vec {
        p: u64,
        dim: usize,
    },
    Mset {
        monoid: String,
        carrier: Vec<String>,
        action: Vec<Vec<String>>,
    },
    Rel {
        arities: Vec<usize>,
        carrier: Vec<String>,
        relations: Vec<Vec<Vec<String>>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub builtin: String,
    pub depth: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareSpec {
    pub ambient: Vec<String>,
    pub first: Vec<String>,
    pub second: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    pub suite: String,
    #[serde(default)]
    pub config: SuiteConfig,
}

/// Reads and validates a spec file. Unreadable input and malformed JSON
/// are parse errors; a well-formed document with an unsupported version,
/// unknown fields, or invalid payload data is a schema violation.
pub fn parse_spec(path: &Path) -> Result<SpecFile, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpecError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_spec_text(&text)
}

/// Parses inline spec text; see [`parse_spec`].
pub fn parse_spec_text(text: &str) -> Result<SpecFile, SpecError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        debug_assert!(matches!(
            e.classify(),
            serde_json::error::Category::Syntax | serde_json::error::Category::Eof
        ));
        SpecError::Parse(e.to_string())
    })?;
    match value.get("version") {
        Some(v) if v.as_u64() == Some(SUPPORTED_VERSION) => {}
        Some(v) => {
            return Err(schema(
                "version",
                format!("unsupported version {v}, this tool reads version {SUPPORTED_VERSION}"),
            ))
        }
        None => return Err(schema("version", "missing required field")),
    }
    let file: SpecFile =
        serde_json::from_value(value).map_err(|e| SpecError::Schema(e.to_string()))?;
    debug_assert_eq!(file.version, SUPPORTED_VERSION);
    Ok(file)
}

fn carrier_from(path: &str, names: &[String]) -> Result<FinSet, SpecError> {
    FinSet::atoms(names.iter().map(String::as_str)).map_err(|e| schema(path, e))
}

fn cat_err(path: &str) -> impl Fn(CatError) -> SpecError + '_ {
    move |e| schema(path, e)
}

impl ObjectSpec {
    /// Builds the described object, reporting invariant violations (cycles
    /// in an order, non-action tables, bad tuples) as schema errors.
    pub fn build(&self) -> Result<CatObject, SpecError> {
        match self {
            ObjectSpec::Set { carrier } => Ok(CatObject::set(carrier_from("carrier", carrier)?)),
            ObjectSpec::Setp { carrier, base } => {
                let c = carrier_from("carrier", carrier)?;
                CatObject::pointed(c, &Label::atom(base.clone())).map_err(cat_err("base"))
            }
            ObjectSpec::Pos { carrier, le } => {
                let c = carrier_from("carrier", carrier)?;
                let pairs: Vec<(Label, Label)> = le
                    .iter()
                    .map(|(a, b)| (Label::atom(a.clone()), Label::atom(b.clone())))
                    .collect();
                CatObject::poset(c, &pairs).map_err(cat_err("le"))
            }
            ObjectSpec::Bool { atoms } => {
                CatObject::boolean(carrier_from("atoms", atoms)?).map_err(cat_err("atoms"))
            }
            ObjectSpec::Vec { p, dim } => {
                if !(2..=13).contains(p) || !is_prime(*p) {
                    return Err(schema("p", "the field order must be a prime up to 13"));
                }
                if *dim > 6 {
                    return Err(schema("dim", "dimensions above 6 are not desk-scale"));
                }
                Ok(CatObject::space(*p, *dim))
            }
            ObjectSpec::Mset {
                monoid,
                carrier,
                action,
            } => {
                let m = builtin_monoids()
                    .into_iter()
                    .find(|(name, _)| *name == monoid.as_str())
                    .map(|(_, m)| m)
                    .ok_or_else(|| {
                        schema("monoid", format!("unknown builtin monoid `{monoid}`"))
                    })?;
                let c = carrier_from("carrier", carrier)?;
                let rows: Vec<Vec<Label>> = action
                    .iter()
                    .map(|row| row.iter().map(|s| Label::atom(s.clone())).collect())
                    .collect();
                CatObject::mset(m, c, &rows).map_err(cat_err("action"))
            }
            ObjectSpec::Rel {
                arities,
                carrier,
                relations,
            } => {
                let c = carrier_from("carrier", carrier)?;
                let blocks: Vec<Vec<Vec<Label>>> = relations
                    .iter()
                    .map(|block| {
                        block
                            .iter()
                            .map(|t| t.iter().map(|s| Label::atom(s.clone())).collect())
                            .collect()
                    })
                    .collect();
                CatObject::relational(arities.clone(), c, &blocks).map_err(cat_err("relations"))
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).all(|d| n % d != 0)
}

impl ChainSpec {
    pub fn builtin(&self) -> Result<BuiltinChain, SpecError> {
        BuiltinChain::parse(&self.builtin)
            .ok_or_else(|| schema("builtin", format!("unknown builtin chain `{}`", self.builtin)))
    }

    pub fn checked_depth(&self) -> Result<usize, SpecError> {
        if (1..=32).contains(&self.depth) {
            Ok(self.depth)
        } else {
            Err(schema("depth", "chain depth must be between 1 and 32"))
        }
    }
}

impl SquareSpec {
    /// Builds the two subset inclusions into the ambient set.
    pub fn build(&self) -> Result<(CatMorphism, CatMorphism), SpecError> {
        let ambient = CatObject::set(carrier_from("ambient", &self.ambient)?);
        let inclusion = |path: &str, names: &[String]| -> Result<CatMorphism, SpecError> {
            let sub = carrier_from(path, names)?;
            for l in sub.iter() {
                if !ambient.carrier().contains(l) {
                    return Err(schema(path, format!("{l} is not in the ambient carrier")));
                }
            }
            let map = FinMap::from_fn(sub.clone(), ambient.carrier().clone(), |l| l.clone());
            CatMorphism::from_map(&CatObject::set(sub), &ambient, map.map_err(|e| schema(path, e))?)
                .map_err(cat_err(path))
        };
        Ok((
            inclusion("first", &self.first)?,
            inclusion("second", &self.second)?,
        ))
    }
}

impl SuiteSpec {
    pub fn suite(&self) -> Result<SuiteName, SpecError> {
        SuiteName::parse(&self.suite).ok_or_else(|| {
            schema(
                "suite",
                format!(
                    "unknown suite `{}`, expected one of {}",
                    self.suite,
                    SuiteName::known().join(", ")
                ),
            )
        })
    }
}
