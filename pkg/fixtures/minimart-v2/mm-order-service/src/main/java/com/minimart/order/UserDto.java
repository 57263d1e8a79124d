package com.minimart.order;

import java.util.List;

public class UserDto {
    private String id;
    private String email;
    private List<String> roles;
}
