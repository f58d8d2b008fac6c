//! The Mackey algebra from its presentation, explicit Mackey functors, the bar
//! construction and the twin-dual.

mod algebra;
mod bar;
mod functor;

pub use algebra::{
    build_algebra, check_relations, enumerate_basis, normalize_product, Generator, MackeyAlgebra, MackeyBasisElement,
    MackeyElement, RelationSummary, Word, ALGEBRA_ORDER_BOUND,
};
pub use bar::{
    bar, bar_all, bar_via_jef_res, compare_bar_jef, compare_bar_restriction, twin_dual, twin_functor_dims,
    BarComparison, BarModule, ConjugationModuleData,
};
pub use functor::{burnside_functor, fixed_point_functor, FunctorValidation, MackeyFunctorData};
