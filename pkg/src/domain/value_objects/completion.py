from pydantic import BaseModel, ConfigDict, Field

from .common import digest


class CompletionRequest(BaseModel):
    """Value object for one text-completion call"""
    model_config = ConfigDict(frozen=True)

    system_prompt: str = Field(..., min_length=1)
    user_prompt: str = Field(..., min_length=1)
    max_tokens: int = Field(default=1024, gt=0)
    temperature: float = Field(default=0.0, ge=0)

    def digest(self) -> str:
        """Content digest of the full request"""
        return digest(self.model_dump())
