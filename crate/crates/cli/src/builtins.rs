//! Named structures available as `builtin:<name>`.

use mha_core::groups::Group;
use mha_core::hopf::{
    make_constant_family, make_group_algebra, make_kg, make_ordinary_group_algebra, MhaStructure,
    Tabulated,
};

use anyhow::{bail, Result};

pub const NAMES: [&str; 6] = [
    "kg-s3",
    "kg-z2",
    "kg-integers",
    "group-algebra-s3",
    "constant-cz2-s3",
    "pairing-gacs3",
];

/// A builtin structure and, for pairings, the reference of its cograded partner.
pub struct Builtin {
    pub structure: MhaStructure,
    pub partner: Option<&'static str>,
}

pub fn builtin(name: &str) -> Result<Builtin> {
    let s3 = Group::symmetric3;
    let plain = |structure| {
        Ok(Builtin {
            structure,
            partner: None,
        })
    };
    match name {
        "kg-s3" => plain(make_kg(&s3())),
        "kg-z2" => plain(make_kg(&Group::cyclic(2))),
        "kg-integers" => plain(make_kg(&Group::integers())),
        "group-algebra-s3" => plain(make_group_algebra(&s3())),
        "constant-cz2-s3" => {
            let cz2: Tabulated = make_ordinary_group_algebra(&Group::cyclic(2))?;
            plain(make_constant_family(&cz2, &s3())?)
        }
        "pairing-gacs3" => Ok(Builtin {
            structure: make_group_algebra(&s3()),
            partner: Some("builtin:kg-s3"),
        }),
        other => bail!("unknown builtin {other:?}; known: {}", NAMES.join(", ")),
    }
}
