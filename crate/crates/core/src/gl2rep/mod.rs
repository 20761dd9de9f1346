//! `GL₂(F)`, the Y-module actions, torus modules and induced functions.

pub mod induced;
pub mod matrix;
pub mod tmod;
pub mod whittaker;
pub mod yslots;

pub use induced::{InducedFn, P1Point};
pub use matrix::{bruhat_decompose, GL2Elem, Gen, GenWord};
pub use tmod::{eta, eta_w, t_act, weyl_swap, TBase, TModuleTag};
pub use whittaker::WhittakerFn;
pub use yslots::{
    act_mid, act_mid_diag, act_mid_gen, act_mid_word, act_slot1, act_slot3, act_www, transpose_13,
    DetConvention, YElem,
};
