"""stickcert: machine-checkable certificates for stick number, bridge index,
and superbridge index of polygonal knots.

The pipeline: exact integer coordinates -> regular projection -> knot diagram
-> Wirtinger presentation -> transposition homomorphisms onto symmetric
groups -> interval derivation via the bridge/superbridge/stick inequalities.
"""

from .certify import (
    ContradictionError,
    Interval,
    KnotFacts,
    add_hom_certificate,
    add_stick_witness,
    machine_report,
    new_facts,
    report,
    saturate,
    set_nontrivial,
)
from .diagram import (
    Crossing,
    Diagram,
    DiagramError,
    WirtingerPresentation,
    arc_descriptors,
    change_crossings,
    faces,
    fingerprint,
    gauss_code,
    mirror,
    parse_pd,
    simplify,
    validate,
    wirtinger,
    write_pd,
)
from .geom import (
    Direction,
    EquilateralReport,
    GeometryError,
    IrregularDirectionError,
    NonMorseError,
    Polygon3,
    RegularityReport,
    SweepResult,
    check_equilateral,
    check_regular,
    direction_sweep,
    edge_lengths_squared,
    find_regular_direction,
    local_maxima_count,
    move_vertex,
    project_to_diagram,
)
from .invariants import (
    CapExceeded,
    ColoringCount,
    InvariantError,
    LaurentPoly,
    alexander,
    count_colorings,
    determinant,
    kauffman_bracket,
    parse_poly_text,
    poly_text,
)
from .quotients import (
    BridgeBound,
    HomCertificate,
    Labeling,
    LabelingFailure,
    QuotientError,
    Transposition,
    bridge_lower_bound,
    certificate_text,
    search_homomorphisms,
    transpositions_generate,
    verify_labeling,
)
from .store import (
    CatalogRecord,
    StoreError,
    catalog_get,
    catalog_put,
    fixtures_dir,
    knots_dir,
    list_fixture_polygons,
    load_fixture_diagram,
    load_fixture_polygon,
    parse_coordinates,
    write_coordinates,
)

__version__ = "0.1.0"
