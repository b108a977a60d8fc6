//! Elementary integrity bases for the built-in groups, written over local
//! partner variables `α, β, γ`. Numerators are keyed by final irrep label.

pub(crate) struct Elementary {
    pub denominators: &'static [&'static str],
    pub numerators: &'static [(&'static str, &'static [&'static str])],
}

pub(crate) const LOCAL_NAMES: [&str; 3] = ["α", "β", "γ"];

const A1: Elementary = Elementary {
    denominators: &["α"],
    numerators: &[("A1", &["1"])],
};

const A2: Elementary = Elementary {
    denominators: &["α^2"],
    numerators: &[("A1", &["1"]), ("A2", &["α"])],
};

const TD_E: Elementary = Elementary {
    denominators: &["(α^2 + β^2)/sqrt(2)", "(-α^3 + 3*α*β^2)/2"],
    numerators: &[
        ("A1", &["1"]),
        ("A2", &["(-3*α^2*β + β^3)/2"]),
        ("E", &["α", "β"]),
        ("E", &["(-α^2 + β^2)/sqrt(2)", "2*α*β/sqrt(2)"]),
    ],
};

const TD_F1: Elementary = Elementary {
    denominators: &[
        "(α^2 + β^2 + γ^2)/sqrt(3)",
        "(α^4 + β^4 + γ^4)/sqrt(3)",
        "(α^6 + β^6 + γ^6)/sqrt(3)",
    ],
    numerators: &[
        ("A1", &["1"]),
        ("A1", &["α*β*γ*(α^2 - β^2)*(β^2 - γ^2)*(γ^2 - α^2)/sqrt(6)"]),
        ("A2", &["α*β*γ"]),
        ("A2", &["(α^2 - β^2)*(β^2 - γ^2)*(γ^2 - α^2)/sqrt(6)"]),
        ("E", &["(α^2 + β^2 - 2*γ^2)/sqrt(6)", "sqrt(3)*(-α^2 + β^2)/sqrt(6)"]),
        ("E", &["(α^4 + β^4 - 2*γ^4)/sqrt(6)", "sqrt(3)*(-α^4 + β^4)/sqrt(6)"]),
        (
            "E",
            &[
                "α*β*γ*sqrt(3)*(α^2 - β^2)/sqrt(6)",
                "α*β*γ*(α^2 + β^2 - 2*γ^2)/sqrt(6)",
            ],
        ),
        (
            "E",
            &[
                "α*β*γ*sqrt(3)*(α^4 - β^4)/sqrt(6)",
                "α*β*γ*(α^4 + β^4 - 2*γ^4)/sqrt(6)",
            ],
        ),
        ("F1", &["α", "β", "γ"]),
        ("F1", &["α^3", "β^3", "γ^3"]),
        (
            "F1",
            &[
                "(β^2 - γ^2)*β*γ/sqrt(2)",
                "(γ^2 - α^2)*γ*α/sqrt(2)",
                "(α^2 - β^2)*α*β/sqrt(2)",
            ],
        ),
        ("F1", &["α^5", "β^5", "γ^5"]),
        (
            "F1",
            &[
                "(β^4 - γ^4)*β*γ/sqrt(2)",
                "(γ^4 - α^4)*γ*α/sqrt(2)",
                "(α^4 - β^4)*α*β/sqrt(2)",
            ],
        ),
        (
            "F1",
            &[
                "α*β*γ*(β^4 - γ^4)*α/sqrt(2)",
                "α*β*γ*(γ^4 - α^4)*β/sqrt(2)",
                "α*β*γ*(α^4 - β^4)*γ/sqrt(2)",
            ],
        ),
        ("F2", &["β*γ", "γ*α", "α*β"]),
        (
            "F2",
            &[
                "(β^2 - γ^2)*α/sqrt(2)",
                "(γ^2 - α^2)*β/sqrt(2)",
                "(α^2 - β^2)*γ/sqrt(2)",
            ],
        ),
        ("F2", &["α*β*γ*α", "α*β*γ*β", "α*β*γ*γ"]),
        (
            "F2",
            &[
                "(β^4 - γ^4)*α/sqrt(2)",
                "(γ^4 - α^4)*β/sqrt(2)",
                "(α^4 - β^4)*γ/sqrt(2)",
            ],
        ),
        ("F2", &["α*β*γ*α^3", "α*β*γ*β^3", "α*β*γ*γ^3"]),
        (
            "F2",
            &[
                "α*β*γ*(β^2 - γ^2)*β*γ/sqrt(2)",
                "α*β*γ*(γ^2 - α^2)*α*γ/sqrt(2)",
                "α*β*γ*(α^2 - β^2)*α*β/sqrt(2)",
            ],
        ),
    ],
};

const TD_F2: Elementary = Elementary {
    denominators: &[
        "(α^2 + β^2 + γ^2)/sqrt(3)",
        "α*β*γ",
        "(α^4 + β^4 + γ^4)/sqrt(3)",
    ],
    numerators: &[
        ("A1", &["1"]),
        ("A2", &["(α^2 - β^2)*(β^2 - γ^2)*(γ^2 - α^2)/sqrt(6)"]),
        ("E", &["(α^2 + β^2 - 2*γ^2)/sqrt(6)", "sqrt(3)*(-α^2 + β^2)/sqrt(6)"]),
        ("E", &["(α^4 + β^4 - 2*γ^4)/sqrt(6)", "sqrt(3)*(-α^4 + β^4)/sqrt(6)"]),
        (
            "F1",
            &[
                "(β^2 - γ^2)*α/sqrt(2)",
                "(γ^2 - α^2)*β/sqrt(2)",
                "(α^2 - β^2)*γ/sqrt(2)",
            ],
        ),
        (
            "F1",
            &[
                "(β^2 - γ^2)*β*γ/sqrt(2)",
                "(γ^2 - α^2)*γ*α/sqrt(2)",
                "(α^2 - β^2)*α*β/sqrt(2)",
            ],
        ),
        (
            "F1",
            &[
                "(β^2 - γ^2)*α^3/sqrt(2)",
                "(γ^2 - α^2)*β^3/sqrt(2)",
                "(α^2 - β^2)*γ^3/sqrt(2)",
            ],
        ),
        ("F2", &["α", "β", "γ"]),
        ("F2", &["β*γ", "γ*α", "α*β"]),
        ("F2", &["α^3", "β^3", "γ^3"]),
    ],
};

/// Tabulated elementary basis for `initial`, when `group` is one of the
/// built-in groups (matched by name; callers confirm the irreps agree).
pub(crate) fn lookup(group_name: &str, initial: &str) -> Option<&'static Elementary> {
    match (group_name, initial) {
        ("Td", "A1") | ("Ci", "A1") => Some(&A1),
        ("Td", "A2") | ("Ci", "A2") => Some(&A2),
        ("Td", "E") => Some(&TD_E),
        ("Td", "F1") => Some(&TD_F1),
        ("Td", "F2") => Some(&TD_F2),
        _ => None,
    }
}
