"""Shipped example algebras, merged from the catalog directory into one bundle."""
import logging
from functools import lru_cache
from pathlib import Path

from axioms.registry import check_structure_axiom
from core.conf import setting
from core.exceptions import BundleSemanticError

from .documents import AlgebraBundle, parse_bundle

logger = logging.getLogger(__name__)

CATALOG_NAME = 'catalog'
FIXTURE_DIR = 'fp'


def catalog_dir():
    directory = setting('HOMALG_CATALOG_DIR')
    return Path(directory) if directory else Path(__file__).resolve().parent / 'catalog'


@lru_cache(maxsize=None)
def _load(directory):
    merged = AlgebraBundle(generates_abelian=True)
    for path in sorted(Path(directory).glob('*.json')):
        part = parse_bundle(path.read_text(encoding='utf-8'))
        if part.field != merged.field:
            raise BundleSemanticError(f"catalog file {path.name} is not over Q", 'field')
        for name, algebra in part.algebras.items():
            if name in merged.algebras:
                raise BundleSemanticError(f"algebra {name!r} defined twice in the catalog", path.name)
            merged.add_algebra(algebra, part.skew_complete[name], part.axioms[name])
        for kind in ('operators', 'functionals', 'maps'):
            target = getattr(merged, kind)
            for name, entry in getattr(part, kind).items():
                if name in target:
                    raise BundleSemanticError(f"{kind[:-1]} {name!r} defined twice in the catalog", path.name)
                target[name] = entry
    logger.debug(f"Loaded catalog from {directory}: {', '.join(merged.algebras)}")
    return merged


def load_catalog():
    return _load(str(catalog_dir()))


@lru_cache(maxsize=None)
def _load_fixtures(directory):
    fixtures = {}
    for path in sorted(Path(directory).glob('*.json')):
        fixtures[path.stem] = parse_bundle(path.read_text(encoding='utf-8'))
    return fixtures


def load_fixtures():
    """Search-emitted F_p bundles shipped beside the catalog, by file stem"""
    return _load_fixtures(str(catalog_dir() / FIXTURE_DIR))


def load_source(source):
    """A bundle file path, the literal 'catalog', or 'catalog:<stem>' for a shipped F_p fixture"""
    if source == CATALOG_NAME:
        return load_catalog()
    if source.startswith(f"{CATALOG_NAME}:"):
        stem = source.split(':', 1)[1]
        fixtures = load_fixtures()
        if stem not in fixtures:
            raise BundleSemanticError(f"no catalog fixture named {stem!r}", 'catalog')
        return fixtures[stem]
    path = Path(source)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as exc:
        raise BundleSemanticError(f"cannot read bundle: {exc.strerror}", str(path)) from exc
    return parse_bundle(text)


def declared_axiom_reports(bundle):
    """Check every algebra against the axioms it declares"""
    reports = {}
    for name, algebra in bundle.algebras.items():
        reports[name] = [check_structure_axiom(algebra, axiom) for axiom in bundle.axioms.get(name, [])]
    return reports
