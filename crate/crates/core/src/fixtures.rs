//! Small reference networks shipped with the crate.

pub const FIG1: &str = include_str!("../fixtures/fig1.net");
pub const FIG2: &str = include_str!("../fixtures/fig2.net");
pub const FIG2_FLOW: &str = include_str!("../fixtures/fig2.flow");
pub const FIG3: &str = include_str!("../fixtures/fig3.net");
pub const FIG4: &str = include_str!("../fixtures/fig4.net");
pub const FIG5: &str = include_str!("../fixtures/fig5.net");
pub const FIG6: &str = include_str!("../fixtures/fig6.net");

pub const NETWORKS: [&str; 6] = [FIG1, FIG2, FIG3, FIG4, FIG5, FIG6];

/// `(name, text)` pairs for every fixture network.
pub const NAMED: [(&str, &str); 6] = [
    ("fig1", FIG1),
    ("fig2", FIG2),
    ("fig3", FIG3),
    ("fig4", FIG4),
    ("fig5", FIG5),
    ("fig6", FIG6),
];
