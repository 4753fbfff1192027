"""OpenTelemetry spans for engine runs.

Every span is named ``alm.<operation>``. Spans about one algebra carry
``alm.algebra`` and ``alm.order``; other attributes are namespaced the same way.
"""

from __future__ import annotations

from collections.abc import Generator
from contextlib import contextmanager
from typing import TYPE_CHECKING, Any

from opentelemetry import trace
from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

from alm_workbench import __version__, config

if TYPE_CHECKING:
    from alm_workbench.algebra import FiniteAlgebra

SERVICE_NAME = "alm-workbench"
SPAN_PREFIX = "alm."

_tracer: trace.Tracer | None = None


def setup_tracing(service_name: str = SERVICE_NAME, endpoint: str | None = None) -> trace.Tracer:
    """Install the tracer provider once; export over OTLP only when OTEL_ENABLED."""
    global _tracer

    if _tracer is not None:
        return _tracer

    resource = Resource.create({"service.name": service_name, "service.version": __version__})
    provider = TracerProvider(resource=resource)

    # a one-shot CLI run should not wait on a collector
    if config.OTEL_ENABLED:
        exporter = OTLPSpanExporter(endpoint=endpoint or config.OTEL_EXPORTER_ENDPOINT, insecure=True)
        provider.add_span_processor(BatchSpanProcessor(exporter))

    trace.set_tracer_provider(provider)
    _tracer = trace.get_tracer(service_name, __version__)
    return _tracer


def get_tracer() -> trace.Tracer:
    return _tracer if _tracer is not None else setup_tracing()


def span_attributes(attributes: dict[str, Any] | None) -> dict[str, Any]:
    """Prefix attribute keys with ``alm.`` unless they already carry a namespace."""
    return {(k if "." in k else SPAN_PREFIX + k): v for k, v in (attributes or {}).items()}


@contextmanager
def create_span(
    name: str,
    attributes: dict[str, Any] | None = None,
) -> Generator[trace.Span, None, None]:
    """
    Open ``alm.<name>`` as the current span.

    Usage:
        with create_span("enumerate_models", {"order": n}) as span:
            models = ...
            span.set_attribute("alm.model_count", len(models))
    """
    with get_tracer().start_as_current_span(
        SPAN_PREFIX + name, attributes=span_attributes(attributes)
    ) as span:
        yield span


@contextmanager
def algebra_span(
    name: str, alg: FiniteAlgebra, **extra: Any
) -> Generator[trace.Span, None, None]:
    """A span about one algebra, tagged with its name and order."""
    with create_span(name, {"algebra": alg.name, "order": alg.n, **extra}) as span:
        yield span
