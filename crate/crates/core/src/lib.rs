pub mod cohomology;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod morse;
pub mod tc;

pub use cohomology::{ClassId, ClassIndex, EqClass, PhiCochain};
pub use complex::{Cell, Chain, Complex, Item, OrderedCell};
pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, GraphStats, TreeData, VertexId};
pub use morse::{GradientField, Label, MorseComplexData, MorseHomology};
pub use tc::{tc_report, Method, Status, TCReport, TcOptions};
