//! Structured element labels.
//!
//! Every carrier element in this crate is named by a [`Label`]. Constructions
//! that build new carriers out of old ones (products, coproducts, quotients)
//! produce structured labels instead of fresh opaque names, so that equal
//! constructions yield byte-identical results:
//!
//! * product elements are [`Label::Tuple`]s of the component labels,
//! * coproduct elements are [`Label::Tagged`] with the summand position,
//! * quotient classes reuse the label of their least member.
//!
//! `Label` carries a fixed total order (`Atom < Tuple < Tagged`, then
//! lexicographic within each kind). All carriers are kept sorted in this
//! order, which is what makes every operation in the crate deterministic.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    /// A plain named element.
    Atom(String),
    /// An element of a product (or any tuple-shaped construction).
    Tuple(Vec<Label>),
    /// An element of a coproduct: summand position plus the original label.
    Tagged(usize, Box<Label>),
}

impl Label {
    pub fn atom(name: impl Into<String>) -> Self {
        Label::Atom(name.into())
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::Tuple(vec![a, b])
    }

    pub fn tagged(tag: usize, inner: Label) -> Self {
        Label::Tagged(tag, Box::new(inner))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => write!(f, "{s}"),
            Label::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Label::Tagged(tag, inner) => write!(f, "{tag}:{inner}"),
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Atom(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::Atom(s)
    }
}

// JSON form: atoms are bare strings, tuples are arrays, tagged labels are
// {"tag": k, "value": ...}. This keeps hand-written spec files readable.
impl Serialize for Label {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Atom(s) => ser.serialize_str(s),
            Label::Tuple(parts) => parts.serialize(ser),
            Label::Tagged(tag, inner) => {
                use serde::ser::SerializeStruct;
                let mut st = ser.serialize_struct("Label", 2)?;
                st.serialize_field("tag", tag)?;
                st.serialize_field("value", inner)?;
                st.end()
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LabelRepr {
    Atom(String),
    Tuple(Vec<LabelRepr>),
    Tagged { tag: usize, value: Box<LabelRepr> },
}

impl From<LabelRepr> for Label {
    fn from(r: LabelRepr) -> Self {
        match r {
            LabelRepr::Atom(s) => Label::Atom(s),
            LabelRepr::Tuple(v) => Label::Tuple(v.into_iter().map(Label::from).collect()),
            LabelRepr::Tagged { tag, value } => Label::Tagged(tag, Box::new((*value).into())),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = LabelRepr::deserialize(de)
            .map_err(|e| D::Error::custom(format!("invalid label: {e}")))?;
        Ok(repr.into())
    }
}
