//! Known two-copy cliques for the reference boxes, in event notation.

use crate::behavior::Behavior;
use crate::boxgen::{box1, box2, box3, box4, box5};

pub struct ReferenceClique {
    pub name: &'static str,
    pub behavior: fn() -> Behavior,
    pub events: &'static [&'static str],
}

pub const REFERENCE_CLIQUES: [ReferenceClique; 5] = [
    ReferenceClique {
        name: "box1",
        behavior: box1,
        events: &[
            "1120|0011",
            "1001|1212",
            "2010|0010",
            "0121|1021",
            "2101|0220",
            "2020|0010",
            "2111|0220",
            "0101|0221",
            "0120|0011",
        ],
    },
    ReferenceClique {
        name: "box2",
        behavior: box2,
        events: &[
            "2021|0002",
            "2001|0002",
            "1020|1112",
            "1120|0120",
            "1111|0010",
            "1101|0010",
            "2000|1022",
            "0101|0010",
            "0120|0120",
            "0111|0010",
        ],
    },
    ReferenceClique {
        name: "box3",
        behavior: box3,
        events: &[
            "0212|0110",
            "0201|1012",
            "1002|1211",
            "1111|0001",
            "2012|0110",
            "1120|0202",
            "1102|0202",
            "2202|1211",
            "2222|1211",
            "2220|1211",
            "2020|0210",
            "2021|0210",
        ],
    },
    ReferenceClique {
        name: "box4",
        behavior: box4,
        events: &[
            "0212|0111",
            "0211|0001",
            "0120|1211",
            "2022|1012",
            "1020|1211",
            "2011|0010",
            "2001|0211",
            "2101|0211",
            "1221|0202",
            "1220|0202",
            "1102|0001",
            "1111|0001",
        ],
    },
    ReferenceClique {
        name: "box5",
        behavior: box5,
        events: &[
            "0211|1101",
            "0220|1101",
            "1102|0200",
            "0202|0200",
            "2002|0110",
            "2020|1010",
            "2011|1010",
            "1022|1212",
            "1111|1102",
            "1120|1102",
        ],
    },
];
