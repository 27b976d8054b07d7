# Copyright (c) ragologic contributors.
# Licensed under the MIT License.


def check_argument(check: bool, message: str) -> None:
    """
    Raises a ValueError if the provided check is false

    >>> from ragologic import preconditions
    >>> k = 0
    >>> preconditions.check_argument(k >= 1, "k must be positive")
    Traceback (most recent call last):
        ...
    ValueError: k must be positive

    Parameters
    ----------
    check : bool
        The already evaluated condition
    message : str
        The message to use as the body of the ValueError

    Raises
    ------
    ValueError if ``check`` is false
    """
    if not check:
        raise ValueError(message)


def is_probability(value: float) -> bool:
    """
    ``True`` if ``value`` is a real number within the closed unit interval.

    >>> is_probability(0.5), is_probability(1.2)
    (True, False)
    """
    return 0.0 <= value <= 1.0
