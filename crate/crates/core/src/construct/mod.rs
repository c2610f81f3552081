//! Witness constructions as lazily presented countable posets with two-order
//! realizers, and prefix audits for them.

mod audit;
mod decomp;
pub mod enumeration;
mod extend;
mod lazy;
mod mixing;
mod sierp;

pub use audit::{prefix_audit, with_faulty_right, AuditReport, Check};
pub use decomp::{block_sum, decompinver_witness, minoration_witness, witness_block};
pub use enumeration::{enum_below, OrdinalEnum};
pub use extend::extend_realizer;
pub use lazy::{
    Certificate, Comparator, Coords, LazyPoset, MixingInfo, Prefix, RankFn, Realizer, RelFn,
    VertexFn,
};
pub use mixing::{mixing_poset, MixingCode};
pub use sierp::{aligned_chain, sierpinskisation};
