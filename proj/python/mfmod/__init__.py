"""Python interface to the COBOL subset modernization toolchain."""

try:
    from ._mfmod import (
        __version__,
        analyze_json,
        export_dot,
        improvement,
        migrate_json,
        mir_roundtrip,
        parse_json,
        schedule_json,
        transform_json,
        verify_json,
    )
except ImportError:  # running against a bare build tree
    from _mfmod import (
        __version__,
        analyze_json,
        export_dot,
        improvement,
        migrate_json,
        mir_roundtrip,
        parse_json,
        schedule_json,
        transform_json,
        verify_json,
    )

__all__ = [
    "__version__",
    "analyze_json",
    "export_dot",
    "improvement",
    "migrate_json",
    "mir_roundtrip",
    "parse_json",
    "schedule_json",
    "transform_json",
    "verify_json",
]
