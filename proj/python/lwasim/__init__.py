"""LTE-WiFi split-bearer protocol engine and dual-link simulator."""

from ._core import (
    BacklogDelta,
    ConfigError,
    DecodeError,
    FlowController,
    FramedPdu,
    FrameHeader,
    IoError,
    LinkId,
    MetricsRecord,
    Mode,
    PdcpPdu,
    PdcpTransmitter,
    PduBuilder,
    Reassembler,
    ReassemblyStats,
    ReorderBuffer,
    ReorderStats,
    Report,
    Scenario,
    SduQueue,
    Summary,
    decap_eth,
    decode,
    encap_eth,
    encode,
    load_scenario_file,
    parse_scenario,
    pdcp_parse,
    pdcp_serialize,
    preset,
    preset_names,
    run,
    select_mode,
    sn_after,
    threshold_bytes,
    to_csv,
    validate,
    write_csv_file,
)

__all__ = [
    "BacklogDelta",
    "ConfigError",
    "DecodeError",
    "FlowController",
    "FramedPdu",
    "FrameHeader",
    "IoError",
    "LinkId",
    "MetricsRecord",
    "Mode",
    "PdcpPdu",
    "PdcpTransmitter",
    "PduBuilder",
    "Reassembler",
    "ReassemblyStats",
    "ReorderBuffer",
    "ReorderStats",
    "Report",
    "Scenario",
    "SduQueue",
    "Summary",
    "decap_eth",
    "decode",
    "encap_eth",
    "encode",
    "load_scenario_file",
    "parse_scenario",
    "pdcp_parse",
    "pdcp_serialize",
    "preset",
    "preset_names",
    "run",
    "select_mode",
    "sn_after",
    "threshold_bytes",
    "to_csv",
    "validate",
    "write_csv_file",
]

__version__ = "0.1.0"
