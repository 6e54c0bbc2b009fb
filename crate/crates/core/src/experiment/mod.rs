//! Experiment configuration, the GHZ path state, closed-form reference
//! rates and Babu's switch schedule.

pub mod config;
pub mod ghz;
pub mod rates;
pub mod schedule;

pub use config::{ArmSettings, ConfigFile, ExperimentConfig, ScheduleSettings};
pub use ghz::{ghz_state, GhzPathState};
pub use rates::{ideal_conditional, ideal_rate, ideal_single_rate, nyquist_min_samples, single_choice_pattern};
pub use schedule::{expand_schedule, schedule_from_expansion, SwitchSchedule};
