import matplotlib
from matplotlib.figure import Figure

HASH_SALT = "spectral-shift"


def write_svg(grid, path, title=None):
    """
    Draw xi against lambda as steps and save a standalone SVG

    The hash salt is fixed and the date left out, so equal grids give equal files.

    Args:
        grid(SsfGrid): Values to draw, with the oracle column dashed if present
        path(str): Output file
        title(str): Optional axes title

    """

    with matplotlib.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "path"}):
        figure = Figure(figsize=(6.4, 4.0))
        axes = figure.add_subplot(111)
        axes.plot(grid.lambdas, grid.xi, drawstyle="steps-mid", label="xi")
        if grid.xi_oracle is not None:
            axes.plot(grid.lambdas, grid.xi_oracle, drawstyle="steps-mid", linestyle="--",
                      label="oracle")
            axes.legend()
        axes.set_xlabel("lambda")
        axes.set_ylabel("xi")
        if title:
            axes.set_title(title)
        figure.savefig(path, format="svg", metadata={"Date": None})
