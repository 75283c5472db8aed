"""Pydantic models for Fitzpatrick function evaluation."""

from pydantic import BaseModel, ConfigDict, Field

from src.models.common import FloatArray
from src.models.relation import LinearRelation


class GraphForm(BaseModel):
    """The pairing <a, a*> written in orthonormal graph coordinates.

    Q[i, j] = (<a_i, a*_j> + <a_j, a*_i>) / 2 for the graph basis columns
    (a_i, a*_i); Q is PSD within tolerance iff the relation is monotone.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    relation: LinearRelation
    G: FloatArray = Field(..., description="Graph basis, shape (2n, k)")
    Q: FloatArray = Field(..., description="Symmetric k x k Gram of the pairing")

    @property
    def k(self) -> int:
        return int(self.G.shape[1])
