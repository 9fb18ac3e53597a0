//! Chern–Simons transgression along polynomial families of connections.

mod biform;
mod path;
mod tform;

pub use biform::BiForm;
pub use path::{
    bigon_straight, induced_path, kcs, kcs_between, lagrange_quadratics, reverse_path, secondary_transgression,
    straight_line, three_point_path, Bigon, ClosedFormKcs, PolyPath,
};
pub use tform::{TClass, TForm};
