"""Figure rendering for CLI reports.

Each helper writes a single PNG and returns the path.  The Agg backend is
forced so the CLI can run headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .cartan import CanonicalTriple
from .dilation import BeamSplitter, OpticalNetwork, PhaseShifter

_DPI = 150

#: Canonical-region vertices (a tetrahedron) and reference gates, in radians.
_REGION_VERTICES = {
    "O": (0.0, 0.0, 0.0),
    "A": (np.pi / 4, 0.0, 0.0),
    "B": (np.pi / 4, np.pi / 4, np.pi / 4),
    "C": (np.pi / 4, np.pi / 4, -np.pi / 4),
}
_REGION_EDGES = (("O", "A"), ("O", "B"), ("O", "C"), ("A", "B"), ("A", "C"), ("B", "C"))
_REFERENCE_POINTS = {
    "identity": (0.0, 0.0, 0.0),
    "cnot/cz": (np.pi / 4, 0.0, 0.0),
    "iswap": (np.pi / 4, np.pi / 4, 0.0),
    "swap": (np.pi / 4, np.pi / 4, np.pi / 4),
}


def save_weyl_chamber(triple: CanonicalTriple, path: str) -> str:
    """Canonical-region wireframe with the gate's interaction point marked."""
    fig = plt.figure(figsize=(5, 4), dpi=_DPI)
    ax = fig.add_subplot(111, projection="3d")
    for p1, p2 in _REGION_EDGES:
        xs, ys, zs = zip(_REGION_VERTICES[p1], _REGION_VERTICES[p2])
        ax.plot(xs, ys, zs, color="0.5", lw=0.8)
    for label, (x, y, z) in _REFERENCE_POINTS.items():
        ax.scatter([x], [y], [z], color="0.3", s=12)
        ax.text(x, y, z, f" {label}", fontsize=7, color="0.3")
    ax.scatter([triple.alpha], [triple.beta], [triple.gamma], color="crimson", s=40, marker="*")
    ax.set_xlabel("alpha")
    ax.set_ylabel("beta")
    ax.set_zlabel("gamma")
    ax.set_title("canonical interaction angles")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_convergence(history: list[float], path: str) -> str:
    """Best-so-far success probability over the optimizer's restarts."""
    fig, ax = plt.subplots(figsize=(5, 3.2), dpi=_DPI)
    steps = np.arange(1, len(history) + 1)
    ax.step(steps, history, where="post", color="navy")
    ax.set_xlabel("restart")
    ax.set_ylabel("best success probability")
    ax.set_ylim(0, 1.05)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_network_diagram(net: OpticalNetwork, path: str) -> str:
    """Schematic of a beam-splitter mesh: modes as rails, elements in order."""
    width = max(4.0, 0.45 * len(net.elements) + 1.5)
    fig, ax = plt.subplots(figsize=(width, 0.6 * net.n_modes + 1.0), dpi=_DPI)
    xmax = len(net.elements) + 1
    for mode in range(net.n_modes):
        ax.plot([0, xmax], [mode, mode], color="0.7", lw=1)
        ax.text(-0.15, mode, str(mode), ha="right", va="center", fontsize=8)
    for idx, element in enumerate(net.elements):
        x = idx + 1
        if isinstance(element, BeamSplitter):
            lo, hi = sorted((element.mode_i, element.mode_j))
            ax.plot([x, x], [lo, hi], color="navy", lw=2)
            ax.scatter([x, x], [lo, hi], color="navy", s=14)
            ax.text(
                x, hi + 0.12, f"{element.theta:.2f},{element.phi:.2f}",
                ha="center", fontsize=5, color="navy", rotation=90,
            )
        elif isinstance(element, PhaseShifter):
            ax.scatter([x], [element.mode], color="darkorange", s=26, marker="s")
            ax.text(
                x, element.mode + 0.12, f"{element.phi:.2f}",
                ha="center", fontsize=5, color="darkorange", rotation=90,
            )
    ax.set_ylim(-0.7, net.n_modes - 0.1)
    ax.invert_yaxis()
    ax.axis("off")
    ax.set_title("optical network (input to output)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_block_heatmap(block: np.ndarray, path: str, title: str = "post-selected block") -> str:
    """Magnitudes of the 4x4 logical block with phase annotations."""
    labels = ["00", "01", "10", "11"]
    fig, ax = plt.subplots(figsize=(4.2, 3.6), dpi=_DPI)
    image = ax.imshow(np.abs(block), cmap="viridis", vmin=0)
    for r in range(4):
        for c in range(4):
            z = block[r, c]
            if abs(z) > 1e-12:
                ax.text(
                    c, r, f"{abs(z):.3f}\n{np.angle(z):+.2f}",
                    ha="center", va="center", fontsize=6, color="white",
                )
    ax.set_xticks(range(4), labels)
    ax.set_yticks(range(4), labels)
    ax.set_xlabel("input")
    ax.set_ylabel("output")
    ax.set_title(title, fontsize=9)
    fig.colorbar(image, ax=ax, label="|amplitude|")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
