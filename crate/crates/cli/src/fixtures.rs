//! Built-in presentations, so examples run without a checkout of `fixtures/`.

use std::fmt;
use std::str::FromStr;

pub const DUAL: &str = include_str!("../../../fixtures/dual.qa");
pub const A2: &str = include_str!("../../../fixtures/a2.qa");
pub const E31: &str = include_str!("../../../fixtures/e31.qa");
pub const E31_QUOTIENT: &str = include_str!("../../../fixtures/e31_quotient.qa");
pub const E32: &str = include_str!("../../../fixtures/e32.qa");
pub const E32_FINAL: &str = include_str!("../../../fixtures/e32_final.qa");
pub const E33_R2: &str = include_str!("../../../fixtures/e33_r2.qa");
pub const E33_R2_BASE: &str = include_str!("../../../fixtures/e33_r2_base.qa");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureId {
    Dual,
    A2,
    E31,
    E32,
    E33(usize),
}

impl FixtureId {
    pub fn new_e33(r: usize) -> Result<FixtureId, String> {
        if r < 2 {
            return Err(format!("e33 needs r >= 2, got {r}"));
        }
        Ok(FixtureId::E33(r))
    }

    pub fn all_small() -> Vec<FixtureId> {
        vec![FixtureId::Dual, FixtureId::A2, FixtureId::E31, FixtureId::E32, FixtureId::E33(2)]
    }

    pub fn source(&self) -> String {
        match self {
            FixtureId::Dual => DUAL.into(),
            FixtureId::A2 => A2.into(),
            FixtureId::E31 => E31.into(),
            FixtureId::E32 => E32.into(),
            FixtureId::E33(2) => E33_R2.into(),
            FixtureId::E33(r) => e33_source(*r),
        }
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Dual => f.write_str("dual"),
            FixtureId::A2 => f.write_str("a2"),
            FixtureId::E31 => f.write_str("e31"),
            FixtureId::E32 => f.write_str("e32"),
            FixtureId::E33(r) => write!(f, "e33:{r}"),
        }
    }
}

impl FromStr for FixtureId {
    type Err = String;

    /// `dual`, `a2`, `e31`, `e32`, `e33` (r = 2) or `e33:<r>`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dual" => Ok(FixtureId::Dual),
            "a2" => Ok(FixtureId::A2),
            "e31" => Ok(FixtureId::E31),
            "e32" => Ok(FixtureId::E32),
            "e33" => Ok(FixtureId::E33(2)),
            _ => match s.strip_prefix("e33:") {
                Some(r) => FixtureId::new_e33(r.parse().map_err(|_| format!("bad r in '{s}'"))?),
                None => Err(format!("unknown fixture '{s}'")),
            },
        }
    }
}

/// Central path `p_i^r` of the three-cycle, starting at vertex `i` (1-based),
/// as a function-order word.
fn central_word(i: usize, r: usize) -> String {
    // starting at i the arrows taken are gamma_i, gamma_{i+1}, gamma_{i+2}
    let mut arrows = Vec::new();
    for k in 0..3 * r {
        arrows.push(format!("gamma{}", (i - 1 + k) % 3 + 1));
    }
    arrows.reverse();
    arrows.join(" ")
}

/// The three-cycle with three attached 2-cycles, for any `r >= 2`.
pub fn e33_source(r: usize) -> String {
    let mut s = format!("# three 2-cycles on a central 3-cycle, r = {r}\nfield Q\ncomposition function\n");
    s.push_str("vertices 1, 2, 3, 1p, 2p, 3p\n");
    for i in 1..=3 {
        s.push_str(&format!("arrow gamma{i}: {i} -> {}\n", i % 3 + 1));
    }
    for i in 1..=3 {
        s.push_str(&format!("arrow alpha{i}: {i}p -> {i}\narrow beta{i}: {i} -> {i}p\n"));
    }
    for i in 1..=3 {
        s.push_str(&format!("relation beta{i} alpha{i}\n"));
    }
    for i in 1..=3 {
        s.push_str(&format!("relation gamma{i} alpha{i}\n"));
    }
    for i in 1..=3 {
        // the arrow into vertex i
        s.push_str(&format!("relation beta{i} gamma{}\n", (i + 1) % 3 + 1));
    }
    for i in 1..=3 {
        s.push_str(&format!("relation alpha{i} beta{i} - {}\n", central_word(i, r)));
    }
    s.push_str(&format!("nilpotency {}\n", 3 * r + 1));
    s
}

/// `kZ3 / J^{3r}`, the expected result of peeling the three outer vertices.
pub fn e33_base_source(r: usize) -> String {
    let mut s = String::from("field Q\nvertices 1, 2, 3\n");
    for i in 1..=3 {
        s.push_str(&format!("arrow gamma{i}: {i} -> {}\n", i % 3 + 1));
    }
    s.push_str(&format!("nilpotency {}\n", 3 * r));
    for i in 1..=3 {
        s.push_str(&format!("relation {}\n", central_word(i, r)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use singequiv_core::quiver::parse_presentation;

    #[test]
    fn generated_r2_matches_files() {
        let strip = |t: &str| {
            let mut p = parse_presentation(t).unwrap();
            for r in &mut p.relations {
                r.text.clear();
                r.line = 0;
            }
            p
        };
        assert_eq!(strip(&e33_source(2)), strip(E33_R2));
        assert_eq!(strip(&e33_base_source(2)), strip(E33_R2_BASE));
    }

    #[test]
    fn ids_round_trip() {
        for id in [FixtureId::Dual, FixtureId::E31, FixtureId::E33(3)] {
            assert_eq!(id.to_string().parse::<FixtureId>().unwrap(), id);
        }
        assert!("e33:1".parse::<FixtureId>().is_err());
    }
}
