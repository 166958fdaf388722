//! Scenarios bundled with the binary, one or more per acceptance criterion.

pub struct Builtin {
    pub name: &'static str,
    pub criterion: u32,
    pub description: &'static str,
    pub source: &'static str,
}

macro_rules! builtin {
    ($name:literal, $criterion:literal, $description:literal) => {
        Builtin {
            name: $name,
            criterion: $criterion,
            description: $description,
            source: include_str!(concat!("../scenarios/", $name, ".scn")),
        }
    };
}

pub const CATALOG: &[Builtin] = &[
    builtin!("miao1_jacobi", 1, "Jacobi identity of Miao type I at 100 random states"),
    builtin!(
        "com_bracket_oracle",
        2,
        "COM/relative brackets of an unscaled space-space system match the closed forms"
    ),
    builtin!(
        "effective_kappa",
        3,
        "three identical space-time particles give kappa_eff = 3 kappa"
    ),
    builtin!(
        "spacespace_closure",
        4,
        "mass-scaled space-space system closes at its center of mass"
    ),
    builtin!(
        "decoupling",
        5,
        "scaled space-time system: COM and relative Hamiltonians commute"
    ),
    builtin!(
        "decoupling_counterexample",
        5,
        "kappa = (1,1), m = (1,2): COM and relative motion couple"
    ),
    builtin!(
        "eom_oracle",
        6,
        "bracket flow equals the written Miao type II equations along a trajectory"
    ),
    builtin!("spacetime_wep", 7, "masses 1 and 10 fall alike with mass-scaled kappa"),
    builtin!(
        "wep_violation",
        8,
        "fixed kappa: masses 1 and 2 separate by 0.5 at t = 1"
    ),
    builtin!(
        "body_composition",
        9,
        "partitions (1,3) and (2,2) fall alike only under mass scaling"
    ),
    builtin!(
        "integrator_order",
        10,
        "dt-halving error ratio of the integrator lies in [12, 20]"
    ),
];

pub fn find(name: &str) -> Option<&'static Builtin> {
    let name = name.strip_suffix(".scn").unwrap_or(name);
    CATALOG.iter().find(|b| b.name == name)
}
