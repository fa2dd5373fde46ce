from typing import List

from pydantic import BaseModel, ConfigDict


# Base schemas
class BaseSchema(BaseModel):
    """Base schema for all report and request schemas"""
    model_config = ConfigDict(from_attributes=True, populate_by_name=True, ser_json_inf_nan="strings")


# Error schemas
class ErrorResponse(BaseSchema):
    detail: str


class ValidationErrorResponse(BaseSchema):
    detail: List[dict]
