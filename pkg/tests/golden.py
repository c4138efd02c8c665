"""Reference closed forms for the diagonal metric x2 dx1^2 + x1 dx2^2 + x4 dx3^2 + x3 dx4^2.

Index keys are 1-based.  ``{t1}`` .. ``{t4}`` in the 1-form templates stand for
the components of the free 1-form Theta.
"""

METRIC = {"g11": "x2", "g22": "x1", "g33": "x4", "g44": "x3"}

RIEMANN = {
    (1, 2, 1, 2): "(1/4)*(1/x2 + 1/x1)",
    (3, 4, 3, 4): "(1/4)*(1/x4 + 1/x3)",
}

RICCI = {
    (1, 1): "-(x1/x2 + 1)/(4*x1^2)",
    (2, 2): "-(x2/x1 + 1)/(4*x2^2)",
    (3, 3): "-(x3/x4 + 1)/(4*x3^2)",
    (4, 4): "-(x4/x3 + 1)/(4*x4^2)",
}

NABLA_RIEMANN = {
    (1, 2, 1, 2, 1): "-(x1/x2 + 2)/(4*x1^2)",
    (1, 2, 1, 2, 2): "-(x2/x1 + 2)/(4*x2^2)",
    (3, 4, 3, 4, 3): "-(x3/x4 + 2)/(4*x3^2)",
    (3, 4, 3, 4, 4): "-(x4/x3 + 2)/(4*x4^2)",
}

G_WEDGE_G = {
    (1, 2, 1, 2): "-2*x1*x2",
    (1, 3, 1, 3): "-2*x2*x4",
    (1, 4, 1, 4): "-2*x2*x3",
    (2, 3, 2, 3): "-2*x1*x4",
    (2, 4, 2, 4): "-2*x1*x3",
    (3, 4, 3, 4): "-2*x3*x4",
}

G_WEDGE_S = {
    (1, 2, 1, 2): "(1/2)*(1/x2 + 1/x1)",
    (1, 3, 1, 3): "(x1 + x2)*x4/(4*x1^2*x2) + x2*(x3 + x4)/(4*x3^2*x4)",
    (1, 4, 1, 4): "(x1 + x2)*x3/(4*x1^2*x2) + x2*(x3 + x4)/(4*x4^2*x3)",
    (2, 3, 2, 3): "(x1 + x2)*x4/(4*x1*x2^2) + x1*(x3 + x4)/(4*x3^2*x4)",
    (2, 4, 2, 4): "(x1 + x2)*x3/(4*x1*x2^2) + x1*(x3 + x4)/(4*x4^2*x3)",
    (3, 4, 3, 4): "(1/2)*(1/x4 + 1/x3)",
}

S_WEDGE_S = {
    (1, 2, 1, 2): "-(x1 + x2)^2/(8*x1^3*x2^3)",
    (1, 3, 1, 3): "-(x1 + x2)*(x3 + x4)/(8*x1^2*x2*x3^2*x4)",
    (1, 4, 1, 4): "-(x1 + x2)*(x3 + x4)/(8*x1^2*x2*x3*x4^2)",
    (2, 3, 2, 3): "-(x1 + x2)*(x3 + x4)/(8*x1*x2^2*x3^2*x4)",
    (2, 4, 2, 4): "-(x1 + x2)*(x3 + x4)/(8*x1*x2^2*x3*x4^2)",
    (3, 4, 3, 4): "-(x3 + x4)^2/(8*x3^3*x4^3)",
}

_D = "(x1^2*x3*x2^2 + x1^2*x4*x2^2 - (x1 + x2)*x3^2*x4^2)"
_E = "(x1^2*(x3 + x4)*x2^2 + x3^2*x4^2*x2 + x1*x3^2*x4^2)"
_PI_DEN = f"((x1 + x2)*(x3 + x4)*{_E})"
_PSI_DEN = "(x1^4*x3^2*x2^4 + x1^4*x4^2*x2^4 + 2*x1^4*x3*x4*x2^4 - (x1 + x2)^2*x3^4*x4^4)"

PI = [
    f"(8*({{t1}})*{_D}^2 - x1*x2^2*(x1 + 2*x2)*(x3 + x4)^2)/{_PI_DEN}",
    f"(8*({{t2}})*{_D}^2 - x1^2*x2*(2*x1 + x2)*(x3 + x4)^2)/{_PI_DEN}",
    f"(8*({{t3}})*{_D}^2 - (x1 + x2)^2*x3*x4^2*(x3 + 2*x4))/{_PI_DEN}",
    f"(8*({{t4}})*{_D}^2 - (x1 + x2)^2*x3^2*x4*(2*x3 + x4))/{_PI_DEN}",
]

PHI = [
    f"2*x1*x2^2*x3^2*x4^2*(8*({{t1}})*x1/(x3 + x4) - (x1 + 2*x2)/{_D})/(x1 + x2)",
    f"2*x1^2*x2*x3^2*x4^2*(8*({{t2}})*x2/(x3 + x4) - (2*x1 + x2)/{_D})/(x1 + x2)",
    f"2*x1^2*x2^2*x3*x4^2*(8*({{t3}})*x3/(x1 + x2) + (x3 + 2*x4)/{_D})/(x3 + x4)",
    f"2*x1^2*x2^2*x3^2*x4*(8*({{t4}})*x4/(x1 + x2) + (2*x3 + x4)/{_D})/(x3 + x4)",
]

PSI = [
    f"x1*(x2*x3*x4)^2*(16*({{t1}})*x1*{_D} - (x1 + 2*x2)*(x3 + x4))/{_PSI_DEN}",
    f"x2*(x1*x3*x4)^2*(16*({{t2}})*x2*{_D} - (2*x1 + x2)*(x3 + x4))/{_PSI_DEN}",
    f"x3*(x1*x2*x4)^2*(16*({{t3}})*x3*{_D} + (x1 + x2)*(x3 + 2*x4))/{_PSI_DEN}",
    f"x4*(x1*x2*x3)^2*(16*({{t4}})*x4*{_D} + (x1 + x2)*(2*x3 + x4))/{_PSI_DEN}",
]

_ROTER_D = "(-x1^2*x2^2*(x3 + x4) + x3^2*x4^2*(x1 + x2))"

ROTER = {
    "N1": f"-(x1 + x2)*(x3 + x4)*{_E}/(8*{_ROTER_D}^2)",
    "N2": f"-2*x1^2*x2^2*(x1 + x2)*x3^2*x4^2*(x3 + x4)/{_ROTER_D}^2",
    "N3": f"-2*x1^2*x2^2*x3^2*x4^2*{_E}/{_ROTER_D}^2",
}

_BAR_D = "(-x1^2*(x3 + x4)*x2^2 + x3^2*x4^2*x2 + x1*x3^2*x4^2)"

PI_BAR = [
    "(x1 + 2*x2)*x3^2*x4^2/(x2^2*x3*x1^3 + x2^2*x4*x1^3 - (x1 + x2)*x3^2*x4^2*x1)",
    "(2*x1 + x2)*x3^2*x4^2/(x1^2*x3*x2^3 + x1^2*x4*x2^3 - (x1 + x2)*x3^2*x4^2*x2)",
    f"x1^2*x2^2*(x3 + 2*x4)/(x3*{_BAR_D})",
    f"x1^2*x2^2*(2*x3 + x4)/(x4*{_BAR_D})",
]

PHI_BAR = [
    "(x1 + 2*x2)*(x3 + x4)/(4*x2^2*x3*x1^3 + 4*x2^2*x4*x1^3 - 4*(x1 + x2)*x3^2*x4^2*x1)",
    "(2*x1 + x2)*(x3 + x4)/(4*x1^2*x3*x2^3 + 4*x1^2*x4*x2^3 - 4*(x1 + x2)*x3^2*x4^2*x2)",
    f"(x1 + x2)*(x3 + 2*x4)/(4*x3*{_BAR_D})",
    f"(x1 + x2)*(2*x3 + x4)/(4*x4*{_BAR_D})",
]


def one_forms(templates, theta):
    """Fill a template list with the Theta components (strings)."""
    subs = {f"t{i + 1}": t for i, t in enumerate(theta)}
    return [tpl.format(**subs) for tpl in templates]
