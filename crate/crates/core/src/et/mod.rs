pub mod bounds;
pub mod cross_ratio;
pub mod decide;
pub mod search;
pub mod section;
pub mod twograph;
pub mod unital;
pub mod watkins;

pub use decide::{
    analyze, ket_decide, kut_decide, weak_ket, Decision, EtAnalysis, EtOptions, Goal, OrbitStatus,
};
