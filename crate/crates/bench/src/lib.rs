//! Shared fixtures for the benchmarks.

use novsig::{parse_presentation, EngineOptions, Field, Session};

pub const BS12: &str = "group BS(1,2)\ngens a t\nrel t a t^-1 a^-2";
pub const KLEIN: &str = "group Klein\ngens a t\nrel t a t^-1 a";
pub const Z2: &str = "group Z^2\ngens x y\nrel x y x^-1 y^-1";
pub const SURFACE2: &str = "group Surface(2)\ngens a b c d\nrel a b a^-1 b^-1 c d c^-1 d^-1";

pub fn session(text: &str) -> Session {
    Session::new(
        parse_presentation(text).expect("fixture parses"),
        Field::Rationals,
        (200, 40),
        EngineOptions::default(),
    )
    .expect("fixture completes")
}
