import enum
from typing import Optional

from pydantic import BaseModel, ConfigDict

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG
from vprkit.models.data.DescriptorMatrix import DescriptorMatrix
from vprkit.models.data.GrayImage import GrayImage
from vprkit.models.data.GroundTruth import GroundTruth


class SessionMode(enum.Enum):
    SINGLE = "single"
    MULTI = "multi"


class DatasetBundle(BaseModel):
    """
    Database and query sets plus optional ground truth.

    In single-session mode the database side is absent and the query set is
    compared with itself. Consistency is checked by `validate_bundle`, not here.
    """

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    name: str = "dataset"
    session_mode: SessionMode = SessionMode.MULTI
    db_images: Optional[tuple[GrayImage, ...]] = None
    db_descriptors: Optional[DescriptorMatrix] = None
    q_images: Optional[tuple[GrayImage, ...]] = None
    q_descriptors: Optional[DescriptorMatrix] = None
    ground_truth: Optional[GroundTruth] = None

    @property
    def n_q(self) -> int | None:
        if self.q_descriptors is not None:
            return self.q_descriptors.n
        if self.q_images is not None:
            return len(self.q_images)
        return None

    @property
    def n_db(self) -> int | None:
        if self.session_mode is SessionMode.SINGLE:
            return self.n_q
        if self.db_descriptors is not None:
            return self.db_descriptors.n
        if self.db_images is not None:
            return len(self.db_images)
        return None
