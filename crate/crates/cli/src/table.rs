//! The expected order profiles: one row per (type, isogeny) of the summary
//! table (ranks `n ≥ 6` and the exceptional types) and of the low-rank table.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use weylsect::analysis::{Label, OrderProfile};
use weylsect::{Isogeny, TypeTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Summary,
    LowRank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Isogeny classes as the tables name them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoClass {
    Sc,
    Adjoint,
    /// Type A strictly between; `even` refers to `a = #Z(G)`.
    Middle {
        even: bool,
    },
    /// Type D coweight `ω_1`.
    Coweight1,
    /// Type D coweight `ω_{n-1}`.
    CoweightNm1,
    /// Type D coweight `ω_n`.
    CoweightN,
}

impl IsoClass {
    pub fn matches(self, rank: usize, iso: Isogeny) -> bool {
        match (self, iso) {
            (IsoClass::Sc, Isogeny::SimplyConnected) | (IsoClass::Adjoint, Isogeny::Adjoint) => {
                true
            }
            (IsoClass::Middle { even }, Isogeny::Middle(a)) => (a % 2 == 0) == even,
            (IsoClass::Coweight1, Isogeny::Coweight(1)) => true,
            (IsoClass::CoweightNm1, Isogeny::Coweight(k)) => k + 1 == rank && k != 1,
            (IsoClass::CoweightN, Isogeny::Coweight(k)) => k == rank,
            _ => false,
        }
    }
}

/// A profile shape that can be instantiated at any rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    /// Every node labelled `k`.
    Uniform(i64),
    /// Every node `rest` except the last, which is `last`.
    Last {
        rest: i64,
        last: i64,
    },
    Explicit(Vec<i64>),
}

impl Pattern {
    pub fn at_rank(&self, n: usize) -> OrderProfile {
        match self {
            Pattern::Uniform(k) => OrderProfile::uniform(n, *k),
            Pattern::Last { rest, last } => {
                let mut v = vec![*rest; n];
                v[n - 1] = *last;
                OrderProfile::finite(&v)
            }
            Pattern::Explicit(v) => OrderProfile::finite(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// Exactly these profiles.
    Profiles(Vec<Pattern>),
    /// `base·j` at every node, `j ≥ 1`; checked for `j ∈ {1, 2, 3}`.
    Family { base: i64 },
}

impl Expectation {
    pub fn describe(&self, n: usize) -> String {
        match self {
            Expectation::Profiles(ps) => {
                let v: Vec<String> = ps.iter().map(|p| p.at_rank(n).to_string()).collect();
                format!("{{{}}}", v.join(", "))
            }
            Expectation::Family { base } => format!("{base}j at every node"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub kind: TableKind,
    #[serde(with = "type_tag_serde")]
    pub type_tag: TypeTag,
    /// `Some` for rows about one rank (exceptional types, low-rank rows).
    pub rank: Option<usize>,
    pub parity: Option<Parity>,
    pub isogeny: IsoClass,
    pub expected: Expectation,
}

mod type_tag_serde {
    use serde::{Deserialize, Deserializer, Serializer};
    use weylsect::TypeTag;

    pub fn serialize<S: Serializer>(t: &TypeTag, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&t.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<TypeTag, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl TableRow {
    pub fn matches(&self, kind: TableKind, t: TypeTag, n: usize, iso: Isogeny) -> bool {
        self.kind == kind
            && self.type_tag == t
            && self.rank.is_none_or(|r| r == n)
            && self
                .parity
                .is_none_or(|p| n.is_multiple_of(2) == (p == Parity::Even))
            && self.isogeny.matches(n, iso)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTable {
    pub rows: Vec<TableRow>,
}

fn row(
    name: &str,
    kind: TableKind,
    t: TypeTag,
    rank: Option<usize>,
    parity: Option<Parity>,
    iso: IsoClass,
    expected: Expectation,
) -> TableRow {
    TableRow {
        name: name.to_string(),
        kind,
        type_tag: t,
        rank,
        parity,
        isogeny: iso,
        expected,
    }
}

impl Default for ExpectedTable {
    fn default() -> Self {
        use Expectation::{Family, Profiles};
        use IsoClass::*;
        use Pattern::{Explicit, Last, Uniform};
        use TableKind::{LowRank, Summary};
        use TypeTag::*;
        let (even, odd) = (Some(Parity::Even), Some(Parity::Odd));
        let rows = vec![
            row(
                "A_n simply connected, n odd",
                Summary,
                A,
                None,
                odd,
                Sc,
                Family { base: 4 },
            ),
            row(
                "A_n simply connected, n even",
                Summary,
                A,
                None,
                even,
                Sc,
                Family { base: 2 },
            ),
            row(
                "A_n, 1 < a = #Z(G) < n+1, a even",
                Summary,
                A,
                None,
                None,
                Middle { even: true },
                Family { base: 4 },
            ),
            row(
                "A_n, 1 < a = #Z(G) < n+1, a odd",
                Summary,
                A,
                None,
                None,
                Middle { even: false },
                Family { base: 2 },
            ),
            row(
                "A_n adjoint",
                Summary,
                A,
                None,
                None,
                Adjoint,
                Family { base: 2 },
            ),
            row(
                "B_n simply connected, n even",
                Summary,
                B,
                None,
                even,
                Sc,
                Profiles(vec![Last { rest: 4, last: 2 }, Uniform(4)]),
            ),
            row(
                "B_n simply connected, n odd",
                Summary,
                B,
                None,
                odd,
                Sc,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "B_n adjoint",
                Summary,
                B,
                None,
                None,
                Adjoint,
                Profiles(vec![Uniform(2), Last { rest: 4, last: 2 }]),
            ),
            row(
                "C_n simply connected",
                Summary,
                C,
                None,
                None,
                Sc,
                Profiles(vec![Last { rest: 2, last: 4 }, Uniform(4)]),
            ),
            row(
                "C_n adjoint",
                Summary,
                C,
                None,
                None,
                Adjoint,
                Profiles(vec![Last { rest: 2, last: 4 }, Uniform(4)]),
            ),
            row(
                "D_n simply connected",
                Summary,
                D,
                None,
                None,
                Sc,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "D_n, coweight w1",
                Summary,
                D,
                None,
                None,
                Coweight1,
                Profiles(vec![Uniform(2), Uniform(4)]),
            ),
            row(
                "D_n, n even, coweight w(n-1)",
                Summary,
                D,
                None,
                even,
                CoweightNm1,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "D_n, n even, coweight wn",
                Summary,
                D,
                None,
                even,
                CoweightN,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "D_n adjoint",
                Summary,
                D,
                None,
                None,
                Adjoint,
                Profiles(vec![Uniform(2), Uniform(4)]),
            ),
            row(
                "F4",
                Summary,
                F,
                Some(4),
                None,
                Sc,
                Profiles(vec![Explicit(vec![4, 4, 2, 2]), Uniform(4)]),
            ),
            row(
                "G2",
                Summary,
                G,
                Some(2),
                None,
                Sc,
                Profiles(vec![
                    Explicit(vec![2, 2]),
                    Explicit(vec![2, 4]),
                    Explicit(vec![4, 2]),
                    Uniform(4),
                ]),
            ),
            row(
                "E8",
                Summary,
                E,
                Some(8),
                None,
                Sc,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "E7 simply connected",
                Summary,
                E,
                Some(7),
                None,
                Sc,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "E7 adjoint",
                Summary,
                E,
                Some(7),
                None,
                Adjoint,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "E6 simply connected",
                Summary,
                E,
                Some(6),
                None,
                Sc,
                Profiles(vec![Uniform(4), Uniform(12)]),
            ),
            row(
                "E6 adjoint",
                Summary,
                E,
                Some(6),
                None,
                Adjoint,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "A1 simply connected",
                LowRank,
                A,
                Some(1),
                None,
                Sc,
                Profiles(vec![Uniform(4)]),
            ),
            row(
                "A1 adjoint",
                LowRank,
                A,
                Some(1),
                None,
                Adjoint,
                Profiles(vec![Uniform(2)]),
            ),
            row(
                "D3 simply connected",
                LowRank,
                D,
                Some(3),
                None,
                Sc,
                Family { base: 4 },
            ),
            row(
                "D3 adjoint",
                LowRank,
                D,
                Some(3),
                None,
                Adjoint,
                Family { base: 2 },
            ),
            row(
                "D3, coweight w1",
                LowRank,
                D,
                Some(3),
                None,
                Coweight1,
                Family { base: 2 },
            ),
            row(
                "D4, coweight w4",
                LowRank,
                D,
                Some(4),
                None,
                CoweightN,
                Profiles(vec![Uniform(2), Uniform(4)]),
            ),
            row(
                "D4, coweight w3",
                LowRank,
                D,
                Some(4),
                None,
                CoweightNm1,
                Profiles(vec![Uniform(2), Uniform(4)]),
            ),
        ];
        ExpectedTable { rows }
    }
}

impl ExpectedTable {
    /// Rows of `kind` applying to a case.
    pub fn lookup(&self, kind: TableKind, t: TypeTag, n: usize, iso: Isogeny) -> Vec<&TableRow> {
        self.rows
            .iter()
            .filter(|r| r.matches(kind, t, n, iso))
            .collect()
    }

    /// The row governing a case: a low-rank row if one applies, else the
    /// summary row.
    pub fn governing(&self, t: TypeTag, n: usize, iso: Isogeny) -> Option<&TableRow> {
        self.lookup(TableKind::LowRank, t, n, iso)
            .into_iter()
            .next()
            .or_else(|| {
                self.lookup(TableKind::Summary, t, n, iso)
                    .into_iter()
                    .next()
            })
    }
}

/// Instantiates an exact expectation at rank `n`.
pub fn expected_profiles(e: &Expectation, n: usize) -> Option<BTreeSet<OrderProfile>> {
    match e {
        Expectation::Profiles(ps) => Some(ps.iter().map(|p| p.at_rank(n)).collect()),
        Expectation::Family { .. } => None,
    }
}

/// Whether a profile is `base·j` at every node for one `j`.
pub fn is_family_member(p: &OrderProfile, base: i64) -> Option<i64> {
    let first = match p.labels().first()? {
        Label::Finite(k) => *k,
        Label::Infinite => return None,
    };
    let uniform = p.labels().iter().all(|l| *l == Label::Finite(first));
    (uniform && first % base == 0).then_some(first / base)
}
