from pydantic import BaseModel


class BundleViolation(BaseModel):
    """One broken bundle invariant, e.g. code="soft-containment"."""

    code: str
    message: str
