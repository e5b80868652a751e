//! Named graphs from the worked examples.
//!
//! The two K5-minor pairs are read off drawings, so their edge lists are
//! pinned only by the exact inner products they must reproduce; see the
//! fixture tests.

use orthograph_core::{Graph, Result, Setting, Vertex};

pub struct Fixture {
    pub name: &'static str,
    pub pairs: &'static [(Vertex, Vertex)],
    pub note: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "k5-inner",
        pairs: &[(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)],
        note: "inner pentagram of K5",
    },
    Fixture {
        name: "k5-outer",
        pairs: &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)],
        note: "outer 5-cycle of K5",
    },
    Fixture {
        name: "fig4-g",
        pairs: &[(1, 2), (1, 2), (3, 4), (3, 4)],
        note: "opposite sides of a doubled 4-cycle",
    },
    Fixture {
        name: "fig4-h",
        pairs: &[(2, 3), (2, 3), (1, 4), (1, 4)],
        note: "the other two sides of the doubled 4-cycle",
    },
    Fixture {
        name: "fig3a-red",
        pairs: &[(1, 3), (1, 4), (2, 7), (2, 8), (3, 6), (4, 5), (5, 6)],
        note: "figure-transcribed K5-minor pair, red edges",
    },
    Fixture {
        name: "fig3a-blue",
        pairs: &[(1, 2), (1, 2), (3, 4), (3, 5), (4, 6), (5, 7), (6, 8)],
        note: "figure-transcribed K5-minor pair, blue edges",
    },
    Fixture {
        name: "fig3b-red",
        pairs: &[(1, 2), (1, 2), (3, 6), (3, 7), (4, 5), (4, 7), (5, 6)],
        note: "figure-transcribed K5-minor pair, red edges",
    },
    Fixture {
        name: "fig3b-blue",
        pairs: &[(1, 3), (1, 4), (2, 3), (2, 5), (4, 6), (5, 7), (6, 7)],
        note: "figure-transcribed K5-minor pair, blue edges",
    },
    Fixture {
        name: "cutvertex-g",
        pairs: &[(1, 2), (1, 3), (4, 5)],
        note: "path through the cut vertex 1 plus a disjoint edge",
    },
    Fixture {
        name: "cutvertex-h",
        pairs: &[(1, 4), (1, 5), (2, 3)],
        note: "degree-equivalent partner; each side of vertex 1 is unbalanced",
    },
];

/// The named graph in `setting`.
pub fn named(name: &str, setting: Setting) -> Option<Result<Graph>> {
    FIXTURES.iter().find(|f| f.name == name).map(|f| Graph::from_pairs(setting, f.pairs))
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|f| f.name)
}

/// The named pairs with their expected spherical inner products.
pub const PAIRS: &[(&str, &str, &str)] = &[
    ("k5-inner", "k5-outer", "-8(n-1)(n-2)(n-4)/(n^8(n+2)^4)"),
    ("fig4-g", "fig4-h", "8(n-1)/(n^4(n+2)^3)"),
    ("fig3a-red", "fig3a-blue", "-16(n-1)(n-2)(n-4)/(n^11(n+2)^5)"),
    ("fig3b-red", "fig3b-blue", "-16(n-1)(n-2)^2(n-4)/(n^11(n+2)^6)"),
    ("cutvertex-g", "cutvertex-h", "0"),
];
