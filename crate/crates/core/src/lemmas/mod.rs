pub mod application;
pub mod fcurve;
pub mod line;
pub mod montecarlo;

pub use application::{check_lemma, AnchorReading, Frame, LemmaApplication, LemmaKind, LemmaReport, Params};
pub use fcurve::{eval_f, f_enclosure, FCurvePoint};
pub use line::{guaranteed_line_intersection, LineBound, LineGeometry};
pub use montecarlo::{lemma_soundness, SoundnessRun};
