//! Problem instances, schedules, feasibility checks and age curves.

mod age;
mod instance;
mod schedule;

pub use age::{age_area, age_objective, area_of_updates, AgeCurve, Update};
pub use instance::{
    to_single_hop, validate_two_hop, Condition, Instance, InputWarning, SingleHopInstance, TwoHopInstance,
    Verdict, Violation,
};
pub use schedule::{
    x_to_two_hop, GapViolation, InterUpdateVector, ScheduleViolation, SingleHopSchedule, TwoHopSchedule,
};
