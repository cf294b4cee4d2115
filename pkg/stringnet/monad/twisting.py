from dataclasses import dataclass

from stringnet.core.backend import CategoryBackend
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj


@dataclass(frozen=True)
class Twisting:
    """The pair of double-dual powers (F, G) = (D^a, D^b) attached to a framing winding n.

    T_n(y) is the coend of F(c) (x) y (x) G(vc). The powers always satisfy
    b - a = n - 1, and n = 1 gives the untwisted center.
    """

    winding: int
    f_power: int
    g_power: int

    def F(self, backend: CategoryBackend, x: Obj) -> Obj:
        return backend.double_dual_power(x, self.f_power)

    def G(self, backend: CategoryBackend, x: Obj) -> Obj:
        return backend.double_dual_power(x, self.g_power)

    def F_morphism(self, backend: CategoryBackend, f: Morphism) -> Morphism:
        return backend.double_dual_morphism(f, self.f_power)

    def G_morphism(self, backend: CategoryBackend, f: Morphism) -> Morphism:
        return backend.double_dual_morphism(f, self.g_power)

    def wrap(self, backend: CategoryBackend, c: Obj) -> Obj:
        """F(c), the color a wrapping strand carries into the seam."""
        return self.F(backend, c)

    def cowrap(self, backend: CategoryBackend, c: Obj) -> Obj:
        """G(vc)."""
        return self.G(backend, backend.left_dual(c))

    @property
    def seam_shift(self) -> int:
        """Double-dual power applied to a strand crossing the seam from right to left."""
        return self.winding - 2


def twisting(n: int) -> Twisting:
    if n > 0:
        return Twisting(n, 1 - n, 0)
    if n == 0:
        return Twisting(0, 1, 0)
    return Twisting(n, 1, n)


def from_powers(f_power: int, g_power: int) -> Twisting:
    return Twisting(g_power - f_power + 1, f_power, g_power)
