"""Exact discrete probability with states, predicates and channels."""

from .channel import (
    Box,
    Channel,
    ChannelExpr,
    Copy,
    Discard,
    Id,
    Par,
    Proj,
    Seq,
    Swap,
    channel,
    compose,
    copy,
    deterministic,
    discard,
    evaluate,
    from_predicate,
    identity,
    pair,
    parallel,
    proj,
    pull,
    push,
    state_as_channel,
    swap,
    to_predicate,
)
from .core import (
    Dist,
    Predicate,
    condition,
    convex_sum,
    dist_new,
    falsity,
    format_rat,
    indicator,
    is_sharp,
    marginal,
    parse_rat,
    point,
    point_pred,
    pred_conj,
    pred_ortho,
    pred_product,
    pred_scale,
    predicate,
    product_state,
    truth,
    uniform,
    validity,
    weaken,
)
from .domain import BOOL, UNIT, Domain, ProductDomain
from .dsl import (
    Diagnostic,
    Evidence,
    ParseError,
    SourceSpan,
    bind_evidence,
    format_network,
    parse_evidence,
    parse_network,
)
from .errors import (
    DomainMismatch,
    EmptyGroup,
    EmptyKeepSet,
    IndexOutOfRange,
    IndexOverlap,
    InvalidNetwork,
    MethodMismatch,
    OutOfRange,
    ProbError,
    SumNotOne,
    TypeMismatch,
    UnknownElement,
    UnknownNode,
    ZeroValidity,
)
from .factorize import (
    Disintegration,
    cond_independent,
    disintegrate,
    entwined_by_criterion,
    integrate,
    is_entwined,
    regroup,
)
from .jsonio import JsonFormatError, read_channel, read_dist, write_channel, write_dist
from .network import (
    BayesNet,
    NetError,
    Node,
    QueryResult,
    check,
    compile_joint,
    crossover_infer,
    infer,
    joint_circuit,
    mixture_query,
    to_dot,
    transformer_infer,
    validate,
)

__version__ = "0.1.0"


def load_example(name: str) -> BayesNet:
    """One of the bundled networks: ``"student"`` or ``"burglar"``."""
    from importlib import resources

    text = (resources.files(__name__) / "data" / f"{name}.bn").read_text(encoding="utf-8")
    return parse_network(text, name=name)
