use crate::arith::FactoredInt;
use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sporadic {
    M11,
    M12,
    J1,
    M22,
    J2,
    M23,
    HS,
    J3,
    M24,
    McL,
    He,
    Ru,
    Suz,
    ON,
    Co3,
    Co2,
    Fi22,
    HN,
    Ly,
    Th,
    Fi23,
    Co1,
    J4,
    Fi24,
    B,
    M,
}

struct Entry {
    group: Sporadic,
    name: &'static str,
    order: &'static str,
    factors: &'static [(u64, u32)],
}

const TABLE: [Entry; 26] = [
    Entry { group: Sporadic::M11, name: "M11", order: "7920", factors: &[(2, 4), (3, 2), (5, 1), (11, 1)] },
    Entry { group: Sporadic::M12, name: "M12", order: "95040", factors: &[(2, 6), (3, 3), (5, 1), (11, 1)] },
    Entry { group: Sporadic::J1, name: "J1", order: "175560", factors: &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)] },
    Entry { group: Sporadic::M22, name: "M22", order: "443520", factors: &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)] },
    Entry { group: Sporadic::J2, name: "J2", order: "604800", factors: &[(2, 7), (3, 3), (5, 2), (7, 1)] },
    Entry { group: Sporadic::M23, name: "M23", order: "10200960", factors: &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)] },
    Entry { group: Sporadic::HS, name: "HS", order: "44352000", factors: &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)] },
    Entry { group: Sporadic::J3, name: "J3", order: "50232960", factors: &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)] },
    Entry { group: Sporadic::M24, name: "M24", order: "244823040", factors: &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)] },
    Entry { group: Sporadic::McL, name: "McL", order: "898128000", factors: &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)] },
    Entry { group: Sporadic::He, name: "He", order: "4030387200", factors: &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)] },
    Entry { group: Sporadic::Ru, name: "Ru", order: "145926144000", factors: &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)] },
    Entry { group: Sporadic::Suz, name: "Suz", order: "448345497600", factors: &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)] },
    Entry { group: Sporadic::ON, name: "O'N", order: "460815505920", factors: &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)] },
    Entry { group: Sporadic::Co3, name: "Co3", order: "495766656000", factors: &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)] },
    Entry { group: Sporadic::Co2, name: "Co2", order: "42305421312000", factors: &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)] },
    Entry { group: Sporadic::Fi22, name: "Fi22", order: "64561751654400", factors: &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)] },
    Entry { group: Sporadic::HN, name: "HN", order: "273030912000000", factors: &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)] },
    Entry { group: Sporadic::Ly, name: "Ly", order: "51765179004000000", factors: &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)] },
    Entry { group: Sporadic::Th, name: "Th", order: "90745943887872000", factors: &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)] },
    Entry { group: Sporadic::Fi23, name: "Fi23", order: "4089470473293004800", factors: &[(2, 18), (3, 13), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)] },
    Entry { group: Sporadic::Co1, name: "Co1", order: "4157776806543360000", factors: &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)] },
    Entry { group: Sporadic::J4, name: "J4", order: "86775571046077562880", factors: &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)] },
    Entry { group: Sporadic::Fi24, name: "Fi24'", order: "1255205709190661721292800", factors: &[(2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (17, 1), (23, 1), (29, 1)] },
    Entry { group: Sporadic::B, name: "B", order: "4154781481226426191177580544000000", factors: &[(2, 41), (3, 13), (5, 6), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (31, 1), (47, 1)] },
    Entry { group: Sporadic::M, name: "M", order: "808017424794512875886459904961710757005754368000000000", factors: &[(2, 46), (3, 20), (5, 9), (7, 6), (11, 2), (13, 3), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1), (41, 1), (47, 1), (59, 1), (71, 1)] },
];

pub const SPORADICS: [Sporadic; 26] = [
    Sporadic::M11,
    Sporadic::M12,
    Sporadic::J1,
    Sporadic::M22,
    Sporadic::J2,
    Sporadic::M23,
    Sporadic::HS,
    Sporadic::J3,
    Sporadic::M24,
    Sporadic::McL,
    Sporadic::He,
    Sporadic::Ru,
    Sporadic::Suz,
    Sporadic::ON,
    Sporadic::Co3,
    Sporadic::Co2,
    Sporadic::Fi22,
    Sporadic::HN,
    Sporadic::Ly,
    Sporadic::Th,
    Sporadic::Fi23,
    Sporadic::Co1,
    Sporadic::J4,
    Sporadic::Fi24,
    Sporadic::B,
    Sporadic::M,
];

impl Sporadic {
    fn entry(self) -> &'static Entry {
        TABLE.iter().find(|e| e.group == self).expect("every sporadic has a row")
    }

    pub fn name(self) -> &'static str {
        self.entry().name
    }

    /// Accepts the canonical names plus a few common spellings.
    pub fn from_name(text: &str) -> Option<Sporadic> {
        let t = text.trim();
        let alias = match t {
            "ON" => "O'N",
            "Fi24" | "F3+" => "Fi24'",
            "HJ" => "J2",
            "Monster" | "F1" => "M",
            "BM" | "F2" => "B",
            other => other,
        };
        TABLE.iter().find(|e| e.name == alias).map(|e| e.group)
    }

    pub fn order_value(self) -> BigUint {
        self.entry().order.parse().expect("table order is decimal")
    }

    pub fn factored_order(self) -> FactoredInt {
        FactoredInt::from_factors(self.entry().factors.iter().copied())
    }
}

impl Serialize for Sporadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Sporadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        Sporadic::from_name(&name)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown sporadic group {name}")))
    }
}
