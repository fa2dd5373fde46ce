from pydantic import BaseModel, ConfigDict


class Base(BaseModel):
    """Base class of the immutable domain value types.

    Instances are frozen once validated; every operation of the toolkit is a
    pure function of them.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True, arbitrary_types_allowed=False)
