//! Ideal files shipped with the crate, so the reproduction suite runs from a
//! fresh checkout.

use crate::textio::{parse_ideal, IdealSpec};

pub const EX2: &str = include_str!("../ideals/ex2.ideal");
pub const EX3: &str = include_str!("../ideals/ex3.ideal");
pub const I3: &str = include_str!("../ideals/i3.ideal");

pub const NAMES: [&str; 3] = ["ex2", "ex3", "i3"];

pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "ex2" => Some(EX2),
        "ex3" => Some(EX3),
        "i3" => Some(I3),
        _ => None,
    }
}

pub fn ideal(name: &str) -> Option<IdealSpec> {
    source(name).map(|s| parse_ideal(s).expect("bundled ideal files parse"))
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_parse() {
        for n in super::NAMES {
            assert_eq!(super::ideal(n).unwrap().generators.len(), 3);
        }
    }
}
