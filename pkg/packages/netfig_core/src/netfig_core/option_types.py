"""
Option type definitions

Enumerations and token tables shared by the model, the geometry and both emitters.
"""

from enum import Enum


class Unit(str, Enum):
    """Measure units accepted by tikz-network"""

    CM = 'cm'
    MM = 'mm'
    PT = 'pt'
    IN = 'in'


class RenderMode(str, Enum):
    """tikzpicture drawing mode"""

    FLAT = 'flat'
    """Plain picture, layers only order the drawing"""
    MULTILAYER = 'multilayer'
    """``[multilayer]``: layers recorded, no z offset"""
    MULTILAYER_3D = 'multilayer3d'
    """``[multilayer=3d]``: layers stacked along the z axis"""


class DirectiveID(str, Enum):
    """Global setting commands, named after their settings-file keys"""

    DefaultUnit = 'DefaultUnit'
    """\\SetDefaultUnit"""
    DistanceScale = 'DistanceScale'
    """\\SetDistanceScale"""
    LayerDistance = 'LayerDistance'
    """\\SetLayerDistance"""
    Coordinates = 'Coordinates'
    """\\SetCoordinates"""
    VertexStyle = 'VertexStyle'
    """\\SetVertexStyle"""
    EdgeStyle = 'EdgeStyle'
    """\\SetEdgeStyle"""
    TextStyle = 'TextStyle'
    """\\SetTextStyle"""
    PlaneStyle = 'PlaneStyle'
    """\\SetPlaneStyle"""
    PlaneWidth = 'PlaneWidth'
    """\\SetPlaneWidth"""
    PlaneHeight = 'PlaneHeight'
    """\\SetPlaneHeight"""
    EdgesInBG = 'EdgesInBG'
    """\\EdgesInBG"""
    EdgesNotInBG = 'EdgesNotInBG'
    """\\EdgesNotInBG"""
    Mode = 'Mode'
    """tikzpicture ``multilayer`` option"""
    Color = 'Color'
    """\\definecolor with an RGB triple"""


class Shape(str, Enum):
    """Vertex shapes with a known meaning"""

    CIRCLE = 'circle'
    RECTANGLE = 'rectangle'
    DIAMOND = 'diamond'
    TRAPEZIUM = 'trapezium'
    SEMICIRCLE = 'semicircle'
    ISOSCELES_TRIANGLE = 'isosceles triangle'


class Anchor(str, Enum):
    """TikZ compass anchors"""

    CENTER = 'center'
    EAST = 'east'
    NORTH_EAST = 'north east'
    NORTH = 'north'
    NORTH_WEST = 'north west'
    WEST = 'west'
    SOUTH_WEST = 'south west'
    SOUTH = 'south'
    SOUTH_EAST = 'south east'


# Compass anchors in counter-clockwise order starting at +x, one per 45 degrees
COMPASS: tuple[Anchor, ...] = (
    Anchor.EAST,
    Anchor.NORTH_EAST,
    Anchor.NORTH,
    Anchor.NORTH_WEST,
    Anchor.WEST,
    Anchor.SOUTH_WEST,
    Anchor.SOUTH,
    Anchor.SOUTH_EAST,
)

# Label position keywords and the direction (degrees from +x) they point to
POSITION_KEYWORDS: dict[str, float] = {
    'right': 0.0,
    'above right': 45.0,
    'above': 90.0,
    'above left': 135.0,
    'left': 180.0,
    'below left': 225.0,
    'below': 270.0,
    'below right': 315.0,
}

# LaTeX size commands of the standard 10pt classes, in pt
FONT_SIZE_PT: dict[str, float] = {
    'tiny': 5.0,
    'scriptsize': 7.0,
    'footnotesize': 8.0,
    'small': 9.0,
    'normalsize': 10.0,
    'large': 12.0,
    'Large': 14.4,
    'LARGE': 17.28,
    'huge': 20.74,
    'Huge': 24.88,
}
