//! Case selection: type, rank, isogeny and modulus.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use weylsect::{Isogeny, IsogenyLattice, TypeTag};

use crate::CliError;

pub const DEFAULT_MODULUS: i64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseSpec {
    pub type_tag: TypeTag,
    pub rank: usize,
    pub isogeny: Isogeny,
    pub modulus: i64,
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} {}", self.type_tag, self.rank, self.isogeny)
    }
}

/// Serializable form of a case, used inside every JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDoc {
    #[serde(rename = "type")]
    pub type_tag: String,
    pub rank: usize,
    pub isogeny: String,
    pub modulus: i64,
}

impl From<&CaseSpec> for CaseDoc {
    fn from(c: &CaseSpec) -> Self {
        CaseDoc {
            type_tag: c.type_tag.to_string(),
            rank: c.rank,
            isogeny: c.isogeny.to_string(),
            modulus: c.modulus,
        }
    }
}

impl CaseSpec {
    /// `ty` is either a bare letter (`"A"`, then `rank` is required) or a
    /// letter with rank (`"A5"`, `"E8"`, `"G2"`).
    pub fn parse(
        ty: &str,
        rank: Option<usize>,
        isogeny: Option<&str>,
        modulus: Option<i64>,
    ) -> Result<Self, CliError> {
        let ty = ty.trim();
        let mut chars = ty.chars();
        let letter = chars
            .next()
            .ok_or_else(|| CliError::Usage("empty --type".into()))?;
        let type_tag: TypeTag = letter.to_string().parse()?;
        let suffix: String = chars.collect();
        let embedded = if suffix.is_empty() {
            None
        } else {
            Some(
                suffix
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad type `{ty}`")))?,
            )
        };
        let rank = match (embedded, rank) {
            (Some(a), Some(b)) if a != b => {
                return Err(CliError::Usage(format!(
                    "type `{ty}` conflicts with --rank {b}"
                )));
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => match type_tag {
                TypeTag::F => 4,
                TypeTag::G => 2,
                _ => return Err(CliError::Usage(format!("type {type_tag} needs --rank"))),
            },
        };
        type_tag.validate_rank(rank)?;
        let isogeny = match isogeny {
            Some(s) => Isogeny::parse(s, Some(rank))?,
            None => Isogeny::SimplyConnected,
        };
        let modulus = modulus.unwrap_or(DEFAULT_MODULUS);
        if modulus < 2 || modulus % 2 != 0 {
            return Err(CliError::Usage(format!(
                "--modulus must be a positive even integer, got {modulus}"
            )));
        }
        Ok(CaseSpec {
            type_tag,
            rank,
            isogeny,
            modulus,
        })
    }

    pub fn new(type_tag: TypeTag, rank: usize, isogeny: Isogeny) -> Self {
        CaseSpec {
            type_tag,
            rank,
            isogeny,
            modulus: DEFAULT_MODULUS,
        }
    }

    pub fn build_lattice(&self) -> Result<Arc<IsogenyLattice>, CliError> {
        Ok(IsogenyLattice::build(
            self.type_tag,
            self.rank,
            self.isogeny,
        )?)
    }
}
