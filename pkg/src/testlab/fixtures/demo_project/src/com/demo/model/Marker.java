package com.demo.model;

public class Marker {
}
