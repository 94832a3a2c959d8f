from pathlib import Path

__all__ = [
    "load_description",
    "list_available_descriptions",
    "summary_line",
]


def load_description(check_name: str, descriptions_dir: Path | None = None) -> str:
    """Load the description of an acceptance check from its markdown file.

    Args:
        check_name: Name of the check (with or without .md extension)
        descriptions_dir: Optional custom path to the descriptions directory.
                          If None, uses default location relative to this file.

    Returns:
        The content of the description file as a string.

    Raises:
        FileNotFoundError: If the description file doesn't exist.

    Examples:
        >>> text = load_description("momentum_balance")
        >>> text = load_description("unitarity_identity.md")
    """
    if descriptions_dir is None:
        descriptions_dir = Path(__file__).parent / "descriptions"

    if not check_name.endswith(".md"):
        check_name = f"{check_name}.md"

    path = descriptions_dir / check_name

    if not path.exists():
        raise FileNotFoundError(
            f"Description file not found: {path}\n"
            f"Available descriptions in {descriptions_dir}:\n"
            f"{', '.join(sorted(list_available_descriptions(descriptions_dir)))}"
        )

    return path.read_text(encoding="utf-8")


def list_available_descriptions(descriptions_dir: Path | None = None) -> list[str]:
    """List all available description files (excluding README).

    Args:
        descriptions_dir: Optional custom path to the descriptions directory.

    Returns:
        List of check names without .md extension.
    """
    if descriptions_dir is None:
        descriptions_dir = Path(__file__).parent / "descriptions"

    if not descriptions_dir.exists():
        return []

    return [
        f.stem for f in descriptions_dir.glob("*.md") if f.name != "README.md"
    ]


def summary_line(check_name: str) -> str:
    """First non-heading line of a description, used in reports."""
    for line in load_description(check_name).splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            return stripped
    return check_name
