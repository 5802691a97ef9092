use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partition::Partition;

/// Family-specific vertex tag. Serialized untagged:
/// residues as integers, partitions as `[3,1]`, pairs as `[[2],[1]]`,
/// and type D vertices as `{"pair": [[2],[1]], "sign": 0}` where the sign
/// is ±1 on the two halves of a split pair (λ,λ) and 0 otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Residue(u64),
    Partition(Partition),
    Pair(Partition, Partition),
    Unordered { pair: (Partition, Partition), sign: i8 },
}

fn fmt_partition(f: &mut fmt::Formatter<'_>, p: &[u32]) -> fmt::Result {
    if p.is_empty() {
        return write!(f, "∅");
    }
    let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
    write!(f, "({})", parts.join(","))
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Residue(a) => write!(f, "{a}"),
            Label::Partition(p) => fmt_partition(f, p),
            Label::Pair(l, m) => {
                write!(f, "[")?;
                fmt_partition(f, l)?;
                write!(f, "|")?;
                fmt_partition(f, m)?;
                write!(f, "]")
            }
            Label::Unordered { pair: (l, m), sign } => {
                write!(f, "{{")?;
                fmt_partition(f, l)?;
                write!(f, ",")?;
                fmt_partition(f, m)?;
                write!(f, "}}")?;
                match sign {
                    1 => write!(f, "+"),
                    -1 => write!(f, "-"),
                    _ => Ok(()),
                }
            }
        }
    }
}
