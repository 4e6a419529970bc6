from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

EXTENSION_LANGUAGES = {
    ".java": "Java",
    ".py": "Python",
    ".js": "JavaScript",
    ".ts": "TypeScript",
    ".tsx": "TypeScript",
    ".vue": "Vue",
    ".c": "C",
    ".h": "C",
    ".cpp": "C++",
    ".cc": "C++",
    ".hpp": "C++",
    ".cs": "C#",
    ".go": "Go",
    ".rs": "Rust",
    ".rb": "Ruby",
    ".php": "PHP",
    ".kt": "Kotlin",
    ".swift": "Swift",
    ".scala": "Scala",
    ".sql": "SQL",
}


class SourceFile(BaseModel):
    """Value object for one discovered source file"""
    model_config = ConfigDict(frozen=True)

    path: str = Field(..., min_length=1)
    language: str
    content: str
    loc: int = Field(..., ge=0)

    @property
    def stem(self) -> str:
        return Path(self.path).stem

    @property
    def name(self) -> str:
        return Path(self.path).name

    @staticmethod
    def language_for(path: str) -> str:
        """Infer language label from file extension"""
        return EXTENSION_LANGUAGES.get(Path(path).suffix.lower(), "text")
