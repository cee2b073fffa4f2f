//! Runs the snippets of the guide as doctests.

macro_rules! chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

chapters! {
    introduction => "introduction.md",
    getting_started => "getting-started.md",
    spec_format => "spec-format.md",
    scalars_and_groups => "scalars-and-groups.md",
    graded_algebras => "graded-algebras.md",
    graded_simple => "graded-simple.md",
    polynomials => "polynomials.md",
    codimensions => "codimensions.md",
    exponent => "exponent.md",
    reports => "reports.md",
}
