//! Scene file format and SVG rendering behind the `chardom` binary,
//! exposed as a library so integration tests can drive them directly.

pub mod render;
pub mod scene;
