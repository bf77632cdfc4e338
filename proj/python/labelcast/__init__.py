"""Labelled wireless broadcast toolkit: labelling schemes, a round-synchronous
collision-model simulator, and the level-separability decision machinery."""

from labelcast._core import (  # noqa: F401
    AttenuationTable,
    BroadcastSchedule,
    CriterionResult,
    Error,
    Formula,
    GadgetMap,
    Graph,
    InfeasibleError,
    Label,
    LabelSet,
    LevelView,
    Protocol,
    ReductionReport,
    RoundEvent,
    Scheme,
    Separation,
    SeparationVerdict,
    Trace,
    VerifyCheck,
    VerifyReport,
    brute_force_1in3,
    build_gadget,
    check_separation,
    compute_beta_schedule,
    compute_levels,
    derive_graph,
    extract_assignment,
    find_separation,
    label_ls,
    label_ls_ack,
    label_oack,
    ls_ack_applicable,
    parse_attenuation_csv,
    parse_edge_list,
    parse_formula,
    parse_label_file,
    run_acceptance,
    run_simulation,
    satisfies_1in3,
    verify_reduction,
    verify_trace,
    write_edge_list,
    write_label_file,
    write_separation,
    write_trace_jsonl,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
