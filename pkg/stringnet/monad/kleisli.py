from dataclasses import dataclass

from stringnet.core import exact
from stringnet.core.errors import CompositionError
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj
from stringnet.monad.monad import Monad


@dataclass(frozen=True)
class KleisliMorphism:
    """A morphism source -> target of the Kleisli category, stored as f: source -> T(target)."""

    source: Obj
    target: Obj
    morphism: Morphism


def kleisli_identity(monad: Monad, c: Obj) -> KleisliMorphism:
    return KleisliMorphism(c, c, monad.unit(c))


def kleisli_compose(monad: Monad, g: KleisliMorphism, f: KleisliMorphism) -> KleisliMorphism:
    """g after f, that is μ o T(g) o f.

    Raises:
        CompositionError: If the target of f is not the source of g.
    """
    if f.target != g.source:
        raise CompositionError(g.source, f.target)
    composite = exact.chain(monad.multiplication(g.target).matrix, monad.functor(g.morphism).matrix, f.morphism.matrix)
    return KleisliMorphism(f.source, g.target, Morphism(f.source, monad.T(g.target), composite))


def induction(monad: Monad, f: Morphism) -> KleisliMorphism:
    """I(f) = η o f."""
    return KleisliMorphism(f.dom, f.codom, monad.backend.compose(monad.unit(f.codom), f))


def forget(monad: Monad, h: KleisliMorphism) -> Morphism:
    """U(h) = μ o T(h): T(source) -> T(target)."""
    return monad.backend.compose(monad.multiplication(h.target), monad.functor(h.morphism))
